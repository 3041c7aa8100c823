use std::fs;
use std::path::Path;

use serde::Serialize;
use sparsegab::certify::{build_subcode, certify_mrd, Certificate};
use sparsegab::constraints::check_condition;
use sparsegab::gabidulin::{construct, failure_degree, required_sample_size, ConstructionError};
use sparsegab::gmmds::{det_p_is_nonzero, sweep_families};
use sparsegab::io::{
    attach_provenance, to_canonical_json, CheckReportJson, OracleReportJson, ResultJson, SpecJson,
    SubcodeJson,
};
use sparsegab::{complete_sets, field::format_rational, Rational, SupportSpec};

use crate::config::{read, JobArgs, SampleSize};
use crate::CliError;

/// `Ok(true)` maps to exit code 0, `Ok(false)` to 1.
pub type Outcome = Result<bool, CliError>;

pub fn check(job: &JobArgs) -> Outcome {
    let spec = job.spec()?;
    let report = check_condition(&spec).map_err(CliError::usage)?;
    emit(&CheckReportJson {
        condition: report.holds,
        witness_omega: (!report.holds).then(|| report.omega.iter().map(|i| i + 1).collect()),
        ell: report.ell,
    })?;
    Ok(report.holds)
}

pub fn construct_code(job: &JobArgs) -> Outcome {
    let cfg = job.job()?;
    let report = check_condition(&cfg.spec).map_err(CliError::usage)?;
    if !report.holds {
        return Err(CliError::Refused(format!(
            "the zero pattern violates the intersection condition (ℓ = {} > k = {}); \
             run `sparsegab subcode` for the best distance these zeros allow",
            report.ell,
            cfg.spec.k()
        )));
    }
    let result = construct(&cfg.spec, &cfg.ctx, cfg.s_size, cfg.seed, cfg.max_retries)
        .map_err(construction_error)?;
    let mut cert =
        certify_mrd(&cfg.ctx, &result, &cfg.spec, cfg.check_minors).map_err(CliError::failed)?;
    let spec_json = to_canonical_json(&SpecJson::from_spec(&cfg.spec)).map_err(CliError::failed)?;
    let result_json =
        to_canonical_json(&ResultJson::from_result(&cfg.ctx, &result)).map_err(CliError::failed)?;
    attach_provenance(&mut cert, &spec_json, &result_json);
    write_out(&job.out, "result.json", &result_json)?;
    finish(&job.out, &cert)
}

pub fn subcode(job: &JobArgs) -> Outcome {
    let cfg = job.job()?;
    let sub =
        build_subcode(&cfg.spec, &cfg.ctx, cfg.s_size, cfg.seed, cfg.max_retries).map_err(|e| {
            match e {
                sparsegab::certify::CertifyError::Construction(c) => construction_error(c),
                other => CliError::usage(other),
            }
        })?;
    let spec_json = to_canonical_json(&SpecJson::from_spec(&cfg.spec)).map_err(CliError::failed)?;
    let sub_json = to_canonical_json(&SubcodeJson::from_subcode(&cfg.ctx, &cfg.spec, &sub))
        .map_err(CliError::failed)?;
    let mut cert = sub.certificate.clone();
    attach_provenance(&mut cert, &spec_json, &sub_json);
    write_out(&job.out, "subcode.json", &sub_json)?;
    finish(&job.out, &cert)
}

pub fn certify(job: &JobArgs, result_path: &Path) -> Outcome {
    let text = read(result_path)?;
    let doc: ResultJson = serde_json::from_str(&text)
        .map_err(|e| CliError::Usage(format!("{}: {e}", result_path.display())))?;
    let (ctx, result) = doc
        .to_result()
        .map_err(|e| CliError::Usage(format!("{}: {e}", result_path.display())))?;
    let spec = result.spec.clone();
    let check_minors = job
        .check_minors
        .unwrap_or(spec.n() <= sparsegab::certify::AUTO_MINOR_SWEEP_MAX_N);
    let mut cert = certify_mrd(&ctx, &result, &spec, check_minors).map_err(CliError::usage)?;
    let spec_json = to_canonical_json(&SpecJson::from_spec(&spec)).map_err(CliError::failed)?;
    attach_provenance(&mut cert, &spec_json, &text);
    finish(&job.out, &cert)
}

pub fn oracle(job: &JobArgs, sweep: bool) -> Outcome {
    if sweep {
        let (n, k) = dimensions(job)?;
        let table = sweep_families(n, k, job.mode, job.seed).map_err(CliError::usage)?;
        emit(&table)?;
        return Ok(table.all_agree());
    }
    let spec = job.spec()?;
    let condition = check_condition(&spec).map_err(CliError::usage)?.holds;
    let completed = if spec.is_completed() {
        spec
    } else if condition {
        complete_sets(&spec).map_err(CliError::usage)?
    } else {
        return Err(CliError::Usage(
            "the oracle needs every row to list k - 1 zeros; \
             patterns violating the intersection condition cannot be completed"
                .into(),
        ));
    };
    let verdict = det_p_is_nonzero(&completed, job.mode, job.seed).map_err(CliError::usage)?;
    emit(&OracleReportJson::new(condition, &verdict, &completed))?;
    Ok(verdict.det_p_nonzero)
}

#[derive(Serialize)]
struct BoundReport {
    n: usize,
    k: usize,
    failure_degree: u64,
    epsilon: Option<String>,
    s_size: u64,
    /// `min(1, (n + k(k-1)) / s_size)`.
    failure_bound: String,
}

pub fn bound(job: &JobArgs) -> Outcome {
    let (n, k) = dimensions(job)?;
    let (epsilon, s_size) = match job.sample()? {
        SampleSize::Epsilon(e) => {
            let s = required_sample_size(n, k, &e).map_err(CliError::usage)?;
            (Some(format_rational(&e)), s)
        }
        SampleSize::Explicit(s) => (None, s),
    };
    let degree = failure_degree(n, k);
    let bound = Rational::new(degree.into(), s_size.into()).min(Rational::from_integer(1.into()));
    emit(&BoundReport {
        n,
        k,
        failure_degree: degree,
        epsilon,
        s_size,
        failure_bound: format_rational(&bound),
    })?;
    Ok(true)
}

fn dimensions(job: &JobArgs) -> Result<(usize, usize), CliError> {
    if job.zeros.is_some() {
        let spec: SupportSpec = job.spec()?;
        return Ok((spec.n(), spec.k()));
    }
    match (job.n, job.k) {
        (Some(n), Some(k)) if 1 <= k && k <= n => Ok((n, k)),
        (Some(_), Some(_)) => Err(CliError::Usage("need 1 ≤ k ≤ n".into())),
        _ => Err(CliError::Usage("give --n and --k or --zeros <file>".into())),
    }
}

fn construction_error(e: ConstructionError) -> CliError {
    match e {
        ConstructionError::RetriesExhausted { .. } => CliError::failed(e),
        other => CliError::usage(other),
    }
}

fn finish(out: &Path, cert: &Certificate) -> Outcome {
    let text = to_canonical_json(cert).map_err(CliError::failed)?;
    write_out(out, "certificate.json", &text)?;
    print!("{text}");
    Ok(cert.passed)
}

fn emit<T: Serialize>(value: &T) -> Result<(), CliError> {
    print!("{}", to_canonical_json(value).map_err(CliError::failed)?);
    Ok(())
}

fn write_out(dir: &Path, name: &str, text: &str) -> Result<(), CliError> {
    let path = dir.join(name);
    fs::create_dir_all(dir)
        .and_then(|()| fs::write(&path, text))
        .map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
}
