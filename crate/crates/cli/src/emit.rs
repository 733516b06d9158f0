//! JSON rendering of the core result types and the output envelope.

use num_bigint::BigInt;
use serde_json::{json, Value};

use workbench_core::affine::{AffineMonoid, Normality};
use workbench_core::crossed::{
    MaximalityReport, MinimalPrimeReport, OrbitDecomposition, SeparationReport, Theorem33Report,
};
use workbench_core::groups::{FiniteQuotientTable, GroupVerdict};
use workbench_core::lattice::IntVector;
use workbench_core::presentations::{Confluence, RewriteSystem};
use workbench_core::Status;

use crate::Opts;

pub struct Outcome {
    pub status: Status,
    pub result: Value,
    pub bounds: Value,
    pub pretty: bool,
}

pub fn bounds_json(o: &Opts) -> Value {
    json!({
        "box": o.box_bound,
        "check_len": o.check_len,
        "max_rule_len": o.max_rule_len,
        "max_rules": o.max_rules,
        "radius": o.radius,
    })
}

pub fn status_json(s: &Status) -> Value {
    serde_json::to_value(s).expect("status serializes")
}

pub fn bigint_json(n: &BigInt) -> Value {
    match i64::try_from(n) {
        Ok(small) => json!(small),
        Err(_) => json!(n.to_string()),
    }
}

pub fn vec_json(v: &IntVector) -> Value {
    Value::Array(v.0.iter().map(bigint_json).collect())
}

pub fn vecs_json(vs: &[IntVector]) -> Value {
    Value::Array(vs.iter().map(vec_json).collect())
}

/// Renders a list of generator indices as the generator names.
pub fn name_list(indices: &[usize], names: &[String]) -> Value {
    json!(indices.iter().map(|i| names[*i].clone()).collect::<Vec<_>>())
}

pub fn normality_json(n: &Normality) -> Value {
    match n {
        Normality::Normal => json!({"status": "verified"}),
        Normality::NotNormal { witness } => {
            json!({"status": "refuted", "witness": vec_json(witness)})
        }
        Normality::Unknown { reason } => json!({"status": "unknown", "reason": reason}),
    }
}

pub fn group_verdict_json(v: &GroupVerdict, quotient: &FiniteQuotientTable) -> Value {
    let mut out = serde_json::Map::new();
    out.insert("holds".into(), json!(v.holds));
    if let Some(w) = &v.witness {
        out.insert(
            "witness".into(),
            json!({
                "coset": w.coset,
                "coset_name": quotient.names[w.coset],
                "vector": vec_json(&w.vector),
            }),
        );
    }
    if let Some(axis) = &v.axis {
        out.insert("axis".into(), vec_json(axis));
    }
    Value::Object(out)
}

pub fn confluence_json(rs: &RewriteSystem) -> Value {
    match rs.confluence {
        Confluence::Full => json!({"full": true}),
        Confluence::UpToLength(n) => json!({"certified_length": n, "full": false}),
    }
}

pub fn base_json(base: &AffineMonoid) -> Value {
    let names = &base.generator_names;
    let primes: Vec<Value> = base
        .minimal_primes()
        .iter()
        .map(|fp| {
            json!({
                "face": name_list(&fp.face, names),
                "prime": name_list(&fp.prime, names),
            })
        })
        .collect();
    json!({
        "dim": base.dim(),
        "generator_count": base.generators.len(),
        "group_rank": base.group_rank(),
        "is_maximal_order": normality_json(&base.is_maximal_order()),
        "minimal_primes": primes,
        "name": base.name,
        "unit_rank": base.unit_rank(),
    })
}

pub fn orbits_json(od: &OrbitDecomposition, base: &AffineMonoid) -> Value {
    let names = &base.generator_names;
    let primes: Vec<Value> = od
        .primes
        .iter()
        .map(|fp| name_list(&fp.prime, names))
        .collect();
    let traces: Vec<Value> = od
        .traces
        .iter()
        .map(|t| json!({"generators": vecs_json(&t.generators), "names": t.names}))
        .collect();
    json!({
        "count": od.orbits.len(),
        "orbits": od.orbits,
        "primes": primes,
        "sizes": od.orbits.iter().map(Vec::len).collect::<Vec<_>>(),
        "traces": traces,
    })
}

pub fn separation_json(sep: &SeparationReport) -> Value {
    let chosen = sep
        .chosen
        .as_ref()
        .map(|(v, name)| json!({"element": vec_json(v), "name": name}))
        .unwrap_or(Value::Null);
    json!({
        "chosen": chosen,
        "orbit_count": sep.orbit_count,
        "overall": status_json(&sep.overall),
        "pair_checks": status_json(&sep.pair_checks),
        "power_exponent": sep.power_exponent,
        "power_in_generator_ideals": status_json(&sep.power_in_generator_ideals),
    })
}

pub fn primes_report_json(r: &MinimalPrimeReport) -> Value {
    let primes: Vec<Value> = r
        .primes
        .iter()
        .map(|p| {
            json!({
                "orbit": p.orbit,
                "trace_generators": vecs_json(&p.trace_generators),
                "trace_names": p.trace_names,
            })
        })
        .collect();
    json!({
        "count": r.primes.len(),
        "primes": primes,
        "shortcut": r.shortcut,
        "status": status_json(&r.status),
    })
}

pub fn maximality_json(r: &MaximalityReport) -> Value {
    json!({
        "absorbed": r.absorbed,
        "box": r.box_bound,
        "failures": r.failures,
        "note": r.note,
        "radius": r.radius,
        "skipped_in_monoid": r.skipped_in_monoid,
        "status": status_json(&r.status),
        "witnesses_tested": r.witnesses_tested,
    })
}

pub fn theorem33_json(r: &Theorem33Report) -> Value {
    json!({
        "acc": status_json(&r.acc),
        "base_normal": status_json(&r.base_normal),
        "base_prime_count": r.base_prime_count,
        "bounds": {
            "box": r.bounds.box_bound,
            "exponent": r.bounds.exponent,
            "radius": r.bounds.radius,
        },
        "delta_plus": status_json(&r.delta_plus),
        "dihedral_free": status_json(&r.dihedral_free),
        "dimension": {
            "clkdim": r.dimension.clkdim,
            "dim_s": r.dimension.dim_s,
            "note": r.dimension.note,
        },
        "invariance": status_json(&r.invariance),
        "orbit_count": r.orbit_count,
        "overall": status_json(&r.overall),
        "s_maximal": status_json(&r.s_maximal),
    })
}

pub fn verdict_string(overall: &Status) -> &'static str {
    match overall {
        Status::Verified => "prime Noetherian maximal order",
        Status::Refuted { .. } => "not a prime maximal order",
        Status::Unknown { .. } => "undetermined within the given bounds",
    }
}

pub fn print(outcome: Outcome, elapsed: std::time::Duration) {
    let envelope = json!({
        "bounds": outcome.bounds,
        "command": std::env::args().skip(1).collect::<Vec<String>>(),
        "result": outcome.result,
        "status": status_json(&outcome.status),
        "timing_ms": elapsed.as_millis() as u64,
        "tool": "workbench",
        "version": env!("CARGO_PKG_VERSION"),
    });
    if outcome.pretty {
        println!("status: {}", outcome.status);
        println!(
            "{}",
            serde_json::to_string_pretty(&outcome.result).expect("result serializes")
        );
    } else {
        println!("{}", serde_json::to_string(&envelope).expect("envelope serializes"));
    }
}
