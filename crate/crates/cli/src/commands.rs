use std::time::Instant;

use gaudin_duality::fock::commutativity_check;
use gaudin_duality::gaudin::{
    ber_invariance, build_g, capelli_sum_bhat, capelli_sum_g, classical_duality, default_truncation, duality_check,
    ber_bhat, ModelParams, NamedCheck,
};
use gaudin_duality::window::Comparison;
use gaudin_duality::{Rational, Result};
use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use crate::report::Report;
use crate::{Identity, RunArgs};

/// Range of the integers drawn for omitted parameters.
const DRAW_RANGE: i64 = 7;

fn parse_list(raw: &[String]) -> Result<Vec<Rational>> {
    raw.iter().map(|s| s.parse()).collect()
}

/// Distinct integers in `-DRAW_RANGE..=DRAW_RANGE`.
fn draw(rng: &mut ChaCha8Rng, count: usize) -> Vec<Rational> {
    let width = (2 * DRAW_RANGE + 1) as usize;
    sample(rng, width, count.min(width)).into_iter().map(|i| Rational::from_int(i as i64 - DRAW_RANGE)).collect()
}

pub fn params(run: &RunArgs) -> Result<ModelParams> {
    let mut rng = ChaCha8Rng::seed_from_u64(run.seed);
    let z = match &run.z {
        Some(raw) => parse_list(raw)?,
        None => draw(&mut rng, run.k),
    };
    let lambda = match &run.lambda {
        Some(raw) => parse_list(raw)?,
        None => draw(&mut rng, run.m + run.n),
    };
    let mut trunc = default_truncation(run.m, run.n, run.k);
    if let Some(v) = run.v_floor {
        trunc.v_floor = v;
    }
    if let Some(d) = run.d_floor {
        trunc.d_floor = d;
    }
    if let Some(w) = run.w_top {
        trunc.w_top = w;
    }
    ModelParams::with_truncation(run.m, run.n, run.k, z, lambda, trunc)
}

fn merge(checks: &[NamedCheck]) -> Comparison {
    let mut cmp = Comparison::new(
        checks.iter().map(|c| format!("{}: {}", c.name, c.comparison.window)).collect::<Vec<_>>().join(" | "),
    );
    for (t, c) in checks.iter().enumerate() {
        cmp.absorb(&[t as i64 + 1], c.comparison.clone());
    }
    cmp
}

fn describe(p: &ModelParams) -> serde_json::Value {
    json!({
        "m": p.m, "n": p.n, "k": p.k,
        "z": p.z.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
        "lambda": p.lambda.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
        "v_floor": p.trunc.v_floor, "d_floor": p.trunc.d_floor, "w_top": p.trunc.w_top,
    })
}

pub fn verify(identity: Identity, run: &RunArgs) -> Result<Report> {
    let start = Instant::now();
    let p = params(run)?;
    let mut report = match identity {
        Identity::Duality => {
            let rep = duality_check(&p, run.depth)?;
            let mut r = Report::new("b_{r,s} = g_{s,r}", &rep.comparison);
            r.details = Some(json!({ "params": describe(&p), "b": rep.b, "g": rep.g }));
            r
        }
        Identity::CapelliG => {
            let lhs = build_g(&p)?.cdet();
            let mut r = Report::new("cdet G = Capelli sum", &lhs.compare(&capelli_sum_g(&p)?));
            r.details = Some(json!({ "params": describe(&p) }));
            r
        }
        Identity::CapelliBhat => {
            let lhs = ber_bhat(&p)?;
            let mut r = Report::new("Ber B-hat = Capelli sum", &lhs.compare(&capelli_sum_bhat(&p)?));
            r.details = Some(json!({ "params": describe(&p) }));
            r
        }
        Identity::BerInvariance => {
            let checks = ber_invariance(&p, p.trunc.w_top)?;
            let names: Vec<&str> = checks.iter().map(|c| c.name.as_str()).collect();
            let mut r = Report::new("Ber of B-hat under adjacent transpositions", &merge(&checks));
            r.details = Some(json!({ "params": describe(&p), "checks": names }));
            r
        }
        Identity::Commutativity => {
            let rep = commutativity_check(&p, 3, run.depth, 3)?;
            let mut cmp = Comparison::new(format!(
                "w <= 3, v >= -{}, total degree <= 3, {} coefficients",
                run.depth,
                rep.coefficients.len()
            ));
            for (i, s) in rep.spaces.iter().enumerate() {
                cmp.push(vec![i as i64 + 1], s.failures.is_empty() && s.pairs > 0);
            }
            let spaces: Vec<_> = rep
                .spaces
                .iter()
                .map(|s| json!({ "lambda": s.lambda, "mu": s.mu, "dim": s.dim, "pairs": s.pairs, "failures": s.failures }))
                .collect();
            let mut r = Report::new("Bethe coefficients pairwise commute", &cmp);
            r.details = Some(json!({ "params": describe(&p), "spaces": spaces }));
            r
        }
        Identity::ClassicalDuality => {
            Report::new("[pi(e_ij), pi(e_ab)] = 0", &classical_duality(p.m, p.n, p.k))
        }
    };
    if !run.no_timing {
        report.elapsed_ms = Some(start.elapsed().as_millis() as u64);
    }
    Ok(report)
}

pub fn dump_coeffs(run: &RunArgs) -> Result<Report> {
    let start = Instant::now();
    let p = params(run)?;
    let rep = duality_check(&p, run.depth)?;
    let mut report = Report::new("coefficient tables", &rep.comparison);
    report.details = Some(json!({ "params": describe(&p), "b": rep.b, "g": rep.g }));
    if !run.no_timing {
        report.elapsed_ms = Some(start.elapsed().as_millis() as u64);
    }
    Ok(report)
}
