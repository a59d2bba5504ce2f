//! CSV renderings of the report types. Flat fields become one header plus
//! one row; list-valued reports become one row per element. List fields
//! inside a flat report are joined with '|'.

use satake_core::verify::{
    BootstrapReport, BoundReport, CauchyReport, ConstantsReport, CriterionRow, LrsReport,
    ReplayReport, SampleReport,
};

pub fn constants_csv(r: &ConstantsReport) -> String {
    format!(
        "check,n,m,r,R,c_n\n{},{},{},{},{},{}\n",
        r.check,
        r.n,
        r.m,
        join(&r.r),
        r.thresholds.join("|"),
        r.c_n
    )
}

pub fn bound_csv(r: &BoundReport) -> String {
    let histogram: Vec<String> = r
        .case_histogram
        .iter()
        .map(|(k, v)| format!("{k}:{v}"))
        .collect();
    format!(
        "check,n,start_j,trials,seed,max_modulus,failures,witness_failures,worst_ratio,case_histogram,passed\n{},{},{},{},{},{},{},{},{:e},{},{}\n",
        r.check,
        r.n,
        r.start_j,
        r.trials,
        r.seed,
        r.max_modulus,
        r.failures,
        r.witness_failures,
        r.worst_ratio,
        histogram.join("|"),
        r.passed
    )
}

pub fn replay_csv(r: &ReplayReport) -> String {
    format!(
        "check,n,start_j,max_modulus_sq,bound,violation\n{},{},{},{:e},{:e},{}\n",
        r.check, r.n, r.start_j, r.max_modulus_sq, r.bound, r.violation
    )
}

pub fn cauchy_csv(r: &CauchyReport) -> String {
    format!(
        "check,n,r,seed,exact,lhs_re,lhs_im,rhs_re,rhs_im,abs_diff,equal\n{},{},{},{},{},{},{},{},{},{},{}\n",
        r.check,
        r.n,
        r.r,
        r.seed,
        r.exact,
        r.lhs_re,
        r.lhs_im,
        r.rhs_re,
        r.rhs_im,
        r.abs_diff,
        r.equal
    )
}

pub fn bootstrap_csv(r: &BootstrapReport) -> String {
    let mut out = String::from("iter,constant,measured_exponent,kappa\n");
    for row in &r.rows {
        out.push_str(&format!(
            "{},{:e},{:e},{}\n",
            row.iter,
            row.constant,
            row.measured_exponent,
            row.kappa.map(|k| format!("{k:e}")).unwrap_or_default()
        ));
    }
    out
}

pub fn lrs_csv(r: &LrsReport) -> String {
    format!(
        "check,n,prime_norm,delta,exponent,threshold,params_within_bound\n{},{},{},{},{},{:e},{}\n",
        r.check,
        r.n,
        r.prime_norm,
        r.delta,
        r.exponent,
        r.threshold,
        r.params_within_bound
            .map(|b| b.to_string())
            .unwrap_or_default()
    )
}

pub fn sample_csv(r: &SampleReport) -> String {
    format!(
        "check,n,seed,max_modulus,count_above_unit,max_modulus_sq,record\n{},{},{},{},{},{:e},{}\n",
        r.check,
        r.n,
        r.seed,
        r.max_modulus,
        r.count_above_unit,
        r.max_modulus_sq,
        r.record.replace('\n', ";")
    )
}

pub fn report_csv(rows: &[CriterionRow]) -> String {
    let mut out = String::from("id,check,status,margin,runtime_ms,description\n");
    for row in rows {
        out.push_str(&format!(
            "{},{},{},{:e},{},{}\n",
            row.id,
            row.check,
            status_str(row),
            row.margin,
            row.runtime_ms,
            row.description
        ));
    }
    out
}

fn status_str(row: &CriterionRow) -> &'static str {
    use satake_core::verify::Status;
    match row.status {
        Status::Pass => "pass",
        Status::Fail => "fail",
        Status::Skip => "skip",
    }
}

fn join<T: std::fmt::Display>(items: &[T]) -> String {
    items
        .iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join("|")
}
