//! Zero-pattern constraints on generator matrices.
//!
//! A [`SupportSpec`] lists, for every row `i`, the column set `Z_i` where the
//! generator matrix must vanish. The pattern is realizable by a maximum
//! distance code exactly when every nonempty row subset `Ω` satisfies
//! `|∩_{i∈Ω} Z_i| + |Ω| ≤ k`.
//!
//! Indices are 0-based in this API and 1-based in JSON.

use std::collections::BTreeSet;

/// Largest row count the subset enumeration accepts.
pub const MAX_ENUMERATED_ROWS: usize = 24;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ConstraintError {
    #[error("k = {k} exceeds the enumeration limit of {limit} rows")]
    TooManyRows { k: usize, limit: usize },
    #[error("invalid support spec: {0}")]
    Invalid(String),
    #[error("the zero pattern violates the intersection condition (rows {omega:?})")]
    ConditionViolated { omega: Vec<usize> },
    #[error("no column can be added to row {row} without violating the intersection condition")]
    CompletionStuck { row: usize },
}

/// Column sets `Z_1..Z_k` over `n` columns.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SupportSpec {
    n: usize,
    k: usize,
    zeros: Vec<BTreeSet<usize>>,
}

impl SupportSpec {
    /// `zeros[i]` holds the 0-based columns where row `i` must vanish.
    pub fn new<I, J>(n: usize, k: usize, zeros: I) -> Result<Self, ConstraintError>
    where
        I: IntoIterator<Item = J>,
        J: IntoIterator<Item = usize>,
    {
        let zeros: Vec<BTreeSet<usize>> =
            zeros.into_iter().map(|z| z.into_iter().collect()).collect();
        if k == 0 {
            return Err(ConstraintError::Invalid("k must be at least 1".into()));
        }
        if k > n {
            return Err(ConstraintError::Invalid(format!("k = {k} exceeds n = {n}")));
        }
        if zeros.len() != k {
            return Err(ConstraintError::Invalid(format!(
                "expected {k} zero sets, got {}",
                zeros.len()
            )));
        }
        if let Some((row, col)) = zeros
            .iter()
            .enumerate()
            .find_map(|(i, z)| z.iter().find(|&&c| c >= n).map(|&c| (i, c)))
        {
            return Err(ConstraintError::Invalid(format!(
                "row {row} lists column {col}, outside 0..{n}"
            )));
        }
        Ok(Self { n, k, zeros })
    }

    /// No prescribed zeros at all.
    pub fn unconstrained(n: usize, k: usize) -> Result<Self, ConstraintError> {
        Self::new(n, k, vec![Vec::new(); k])
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn zeros(&self) -> &[BTreeSet<usize>] {
        &self.zeros
    }

    pub fn row_zeros(&self, i: usize) -> Vec<usize> {
        self.zeros[i].iter().copied().collect()
    }

    /// True when every row has exactly `k - 1` zeros.
    pub fn is_completed(&self) -> bool {
        self.zeros.iter().all(|z| z.len() == self.k - 1)
    }

    /// The same zero sets with `extra` empty rows appended (dimension `k + extra`).
    pub fn padded(&self, extra: usize) -> Result<Self, ConstraintError> {
        let mut zeros = self.zeros.clone();
        zeros.extend(std::iter::repeat_with(BTreeSet::new).take(extra));
        Self::new(self.n, self.k + extra, zeros)
    }
}

/// Outcome of checking the intersection condition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConditionReport {
    pub holds: bool,
    /// Maximum of `|∩ Z_i| + |Ω|` over nonempty `Ω`.
    pub ell: usize,
    /// A row subset attaining `ell`; a violation witness when `holds` is false.
    pub omega: Vec<usize>,
}

/// Checks `|∩_{i∈Ω} Z_i| + |Ω| ≤ k` for every nonempty `Ω`.
pub fn check_condition(spec: &SupportSpec) -> Result<ConditionReport, ConstraintError> {
    let (ell, omega) = max_intersection_score(spec)?;
    Ok(ConditionReport {
        holds: ell <= spec.k,
        ell,
        omega,
    })
}

/// `ℓ = max_{Ω ≠ ∅} |∩_{i∈Ω} Z_i| + |Ω|`.
pub fn compute_ell(spec: &SupportSpec) -> Result<usize, ConstraintError> {
    Ok(max_intersection_score(spec)?.0)
}

#[derive(Clone)]
struct Bits(Vec<u64>);

impl Bits {
    fn from_set(set: &BTreeSet<usize>, n: usize) -> Self {
        let mut words = vec![0u64; n.div_ceil(64).max(1)];
        for &c in set {
            words[c / 64] |= 1 << (c % 64);
        }
        Bits(words)
    }

    fn and(&self, other: &Self) -> Self {
        Bits(self.0.iter().zip(&other.0).map(|(a, b)| a & b).collect())
    }

    fn count(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }
}

/// Identical rows are grouped: once one copy is in `Ω`, adding the others
/// raises `|Ω|` without shrinking the intersection, so only unions of whole
/// groups need to be scored.
fn max_intersection_score(spec: &SupportSpec) -> Result<(usize, Vec<usize>), ConstraintError> {
    if spec.k > MAX_ENUMERATED_ROWS {
        return Err(ConstraintError::TooManyRows {
            k: spec.k,
            limit: MAX_ENUMERATED_ROWS,
        });
    }
    let mut groups: Vec<(&BTreeSet<usize>, Vec<usize>)> = Vec::new();
    for (i, z) in spec.zeros.iter().enumerate() {
        match groups.iter_mut().find(|(set, _)| *set == z) {
            Some((_, rows)) => rows.push(i),
            None => groups.push((z, vec![i])),
        }
    }
    let sets: Vec<Bits> = groups
        .iter()
        .map(|(z, _)| Bits::from_set(z, spec.n))
        .collect();
    let sizes: Vec<usize> = groups.iter().map(|(_, rows)| rows.len()).collect();
    // suffix[g] = rows in groups g.. (used once the intersection is empty)
    let mut suffix = vec![0; sizes.len() + 1];
    for g in (0..sizes.len()).rev() {
        suffix[g] = suffix[g + 1] + sizes[g];
    }

    struct Search<'a> {
        sets: &'a [Bits],
        sizes: &'a [usize],
        suffix: &'a [usize],
        best: usize,
        best_groups: Vec<usize>,
        chosen: Vec<usize>,
    }

    impl Search<'_> {
        fn visit(&mut self, next: usize, inter: &Bits, rows: usize) {
            for g in next..self.sets.len() {
                let meet = inter.and(&self.sets[g]);
                let rows_here = rows + self.sizes[g];
                self.chosen.push(g);
                let common = meet.count();
                if common == 0 {
                    // Every extension keeps an empty intersection; taking all
                    // later groups is the best of them.
                    let score = rows_here + self.suffix[g + 1];
                    if score > self.best {
                        self.best = score;
                        self.best_groups = self.chosen.clone();
                        self.best_groups.extend(g + 1..self.sets.len());
                    }
                } else {
                    let score = common + rows_here;
                    if score > self.best {
                        self.best = score;
                        self.best_groups = self.chosen.clone();
                    }
                    self.visit(g + 1, &meet, rows_here);
                }
                self.chosen.pop();
            }
        }
    }

    let full = Bits(vec![u64::MAX; spec.n.div_ceil(64).max(1)]);
    let mut search = Search {
        sets: &sets,
        sizes: &sizes,
        suffix: &suffix,
        best: 0,
        best_groups: Vec::new(),
        chosen: Vec::new(),
    };
    search.visit(0, &full, 0);
    let mut omega: Vec<usize> = search
        .best_groups
        .iter()
        .flat_map(|&g| groups[g].1.iter().copied())
        .collect();
    omega.sort_unstable();
    Ok((search.best, omega))
}

/// Grows every `Z_i` to exactly `k - 1` columns while keeping the condition.
///
/// Rows are filled in increasing order and each row takes the smallest column
/// whose addition keeps the condition true. Every step is re-verified.
pub fn complete_sets(spec: &SupportSpec) -> Result<SupportSpec, ConstraintError> {
    let report = check_condition(spec)?;
    if !report.holds {
        return Err(ConstraintError::ConditionViolated {
            omega: report.omega,
        });
    }
    let mut current = spec.clone();
    for row in 0..spec.k {
        while current.zeros[row].len() < spec.k - 1 {
            let mut added = false;
            for col in 0..spec.n {
                if current.zeros[row].contains(&col) {
                    continue;
                }
                current.zeros[row].insert(col);
                if check_condition(&current)?.holds {
                    added = true;
                    break;
                }
                current.zeros[row].remove(&col);
            }
            if !added {
                return Err(ConstraintError::CompletionStuck { row });
            }
        }
    }
    Ok(current)
}

/// All `size`-subsets of `0..n`, in lexicographic order.
pub fn subsets_of_size(n: usize, size: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, size: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == size {
            out.push(cur.clone());
            return;
        }
        for c in start..n {
            cur.push(c);
            go(c + 1, n, size, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, size, &mut Vec::new(), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(n: usize, k: usize, zeros: &[&[usize]]) -> SupportSpec {
        SupportSpec::new(n, k, zeros.iter().map(|z| z.iter().copied())).unwrap()
    }

    #[test]
    fn pairwise_pattern_holds() {
        let s = spec(3, 3, &[&[0, 1], &[0, 2], &[1, 2]]);
        let r = check_condition(&s).unwrap();
        assert!(r.holds);
        assert_eq!(r.ell, 3);
    }

    #[test]
    fn repeated_row_violates() {
        let s = spec(3, 2, &[&[0], &[0]]);
        let r = check_condition(&s).unwrap();
        assert!(!r.holds);
        assert_eq!(r.omega, vec![0, 1]);
        assert_eq!(r.ell, 3);
    }

    #[test]
    fn empty_sets() {
        for k in 1..6 {
            let s = SupportSpec::unconstrained(7, k).unwrap();
            let r = check_condition(&s).unwrap();
            assert!(r.holds);
            assert_eq!(r.ell, k);
        }
    }

    #[test]
    fn ell_examples() {
        assert_eq!(compute_ell(&spec(4, 2, &[&[0, 1], &[0, 1]])).unwrap(), 4);
        assert_eq!(
            compute_ell(&spec(4, 2, &[&[0, 1, 2], &[0, 1, 2]])).unwrap(),
            5
        );
        assert_eq!(
            compute_ell(&spec(5, 3, &[&[0, 1, 2], &[0, 1, 2], &[0, 1, 2]])).unwrap(),
            6
        );
        assert_eq!(compute_ell(&spec(5, 3, &[&[0], &[0], &[0]])).unwrap(), 4);
    }

    #[test]
    fn guard() {
        let s = SupportSpec::unconstrained(30, 25).unwrap();
        assert_eq!(
            check_condition(&s),
            Err(ConstraintError::TooManyRows { k: 25, limit: 24 })
        );
        assert!(compute_ell(&SupportSpec::unconstrained(30, 24).unwrap()).is_ok());
    }

    #[test]
    fn invalid_specs() {
        assert!(SupportSpec::new(3, 4, vec![Vec::<usize>::new(); 4]).is_err());
        assert!(SupportSpec::new(3, 2, vec![vec![0], vec![3]]).is_err());
        assert!(SupportSpec::new(3, 2, vec![vec![0]]).is_err());
        assert!(SupportSpec::new(3, 0, Vec::<Vec<usize>>::new()).is_err());
    }

    #[test]
    fn completion_small() {
        let s = SupportSpec::unconstrained(3, 2).unwrap();
        let c = complete_sets(&s).unwrap();
        assert_eq!(c.row_zeros(0), vec![0]);
        assert_eq!(c.row_zeros(1), vec![1]);
    }

    #[test]
    fn completion_keeps_completed_spec() {
        let s = spec(4, 3, &[&[0, 1], &[2, 3], &[0, 2]]);
        assert_eq!(complete_sets(&s).unwrap(), s);
    }

    #[test]
    fn completion_refuses_violations() {
        let s = spec(3, 2, &[&[0], &[0]]);
        assert!(matches!(
            complete_sets(&s),
            Err(ConstraintError::ConditionViolated { .. })
        ));
    }

    #[test]
    fn subset_counts() {
        assert_eq!(subsets_of_size(4, 2).len(), 6);
        assert_eq!(subsets_of_size(6, 3).len(), 20);
        assert_eq!(subsets_of_size(5, 0), vec![Vec::<usize>::new()]);
        assert_eq!(
            subsets_of_size(3, 2),
            vec![vec![0, 1], vec![0, 2], vec![1, 2]]
        );
    }

    #[test]
    fn wide_column_range() {
        // more than one bitset word
        let s = spec(130, 2, &[&[129], &[129]]);
        assert!(!check_condition(&s).unwrap().holds);
        let s = spec(130, 2, &[&[64], &[129]]);
        assert!(check_condition(&s).unwrap().holds);
    }
}
