//! Verb implementations: resolve the input, run the needed pipeline stages,
//! and package a status plus result document for the envelope.

use std::path::Path;

use anyhow::{anyhow, bail, Context, Result};
use num_bigint::BigInt;
use serde_json::{json, Value};

use workbench_core::affine::{parse_affine_monoid, AffineMonoid, Membership, Normality};
use workbench_core::bundle::{load_bundle, resolve_bundle_dir, Bundle};
use workbench_core::crossed::{
    group_extension_of, maximality_check, minimal_primes_of_S, prime_action_orbits,
    theorem33_report_with, verify_monomial_rep, CrossedError, RepFailure, Theorem33Bounds,
};
use workbench_core::groups::{parse_extension, ExtensionData, FiniteQuotientTable, GroupElement};
use workbench_core::lattice::IntVector;
use workbench_core::presentations::{
    enumerate_elements, CompletionBounds, Confluence, Presentation, RewriteSystem, Word,
};
use workbench_core::Status;

use crate::emit::{self, Outcome};
use crate::{AffineCmd, Cli, Command, CrossedCmd, GroupCmd, Opts, ReportCmd};

pub fn dispatch(cli: Cli) -> Result<Outcome> {
    match cli.command {
        Command::Normalize { input, word, opts } => normalize(&input, &word, opts),
        Command::Complete { input, opts } => complete_verb(&input, opts),
        Command::Enumerate { input, opts } => enumerate_verb(&input, opts),
        Command::Affine { cmd } => match cmd {
            AffineCmd::Member {
                input,
                vector,
                opts,
            } => affine_member(&input, &vector, opts),
            AffineCmd::MinimalPrimes { input, opts } => affine_minimal_primes(&input, opts),
            AffineCmd::CheckNormal { input, opts } => affine_check_normal(&input, opts),
            AffineCmd::Spectrum { input, opts } => affine_spectrum(&input, opts),
        },
        Command::Group { cmd } => match cmd {
            GroupCmd::DeltaPlus { input, opts } => group_delta_plus(&input, opts),
            GroupCmd::DihedralFree { input, opts } => group_dihedral_free(&input, opts),
            GroupCmd::Validate { input, opts } => group_validate(&input, opts),
        },
        Command::Crossed { cmd } => match cmd {
            CrossedCmd::Validate { input, opts } => crossed_validate(&input, opts),
            CrossedCmd::Orbits { input, opts } => crossed_orbits(&input, opts),
            CrossedCmd::MinimalPrimes { input, opts } => crossed_minimal_primes(&input, opts),
            CrossedCmd::Maximality { input, opts } => crossed_maximality(&input, opts),
            CrossedCmd::RepVerify { input, opts } => crossed_rep_verify(&input, opts),
        },
        Command::Report { cmd } => match cmd {
            ReportCmd::Theorem33 { input, opts } => report_theorem33(&input, opts),
        },
        Command::Replay { name, opts } => replay(&name, opts),
    }
}

fn finish(o: &Opts, status: Status, result: Value) -> Result<Outcome> {
    Ok(Outcome {
        bounds: emit::bounds_json(&o),
        pretty: o.pretty,
        status,
        result,
    })
}

fn completion_bounds(o: &Opts) -> CompletionBounds {
    CompletionBounds {
        max_rules: o.max_rules,
        max_rule_len: o.max_rule_len,
    }
}

fn theorem_bounds(o: &Opts) -> Theorem33Bounds {
    Theorem33Bounds {
        radius: o.radius,
        box_bound: o.box_bound,
        ..Theorem33Bounds::default()
    }
}

fn load(input: &str) -> Result<Bundle> {
    let dir = resolve_bundle_dir(input)?;
    Ok(load_bundle(&dir)?)
}

fn completed(b: &Bundle, o: &Opts) -> Result<RewriteSystem> {
    b.complete(completion_bounds(o))
        .with_context(|| format!("completing `{}` failed", b.name))
}

/// Extraction failures refute the bundled decomposition; only an exhausted
/// certificate budget counts as unknown.
fn crossed_status(e: &CrossedError) -> Status {
    match e {
        CrossedError::Certificate { .. } => Status::unknown(e.to_string()),
        _ => Status::refuted(e.to_string()),
    }
}

fn affine_input(input: &str) -> Result<AffineMonoid> {
    let path = Path::new(input);
    if path.is_file() {
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("cannot read `{input}`"))?;
        Ok(parse_affine_monoid(&text)?)
    } else {
        Ok(load(input)?.base)
    }
}

/// A `group` verb accepts either an extension file or a bundle directory,
/// in which case the extension is computed from the crossed decomposition.
fn group_input(input: &str, o: &Opts) -> Result<ExtensionData> {
    let path = Path::new(input);
    if path.is_file() {
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("cannot read `{input}`"))?;
        Ok(parse_extension(&text)?)
    } else {
        let b = load(input)?;
        let rs = completed(&b, o)?;
        let cs = b
            .crossed_system(&rs, o.check_len)
            .map_err(|e| anyhow!("extraction failed: {e}"))?;
        let ext = group_extension_of(&cs).map_err(|e| anyhow!("group extension failed: {e}"))?;
        Ok(ext.data)
    }
}

fn parse_vector(text: &str, rank: usize) -> Result<IntVector> {
    let mut entries: Vec<BigInt> = Vec::new();
    for token in text.split(|c: char| c == ',' || c.is_whitespace()) {
        if token.is_empty() {
            continue;
        }
        entries.push(
            token
                .parse::<BigInt>()
                .map_err(|_| anyhow!("bad coordinate `{token}`"))?,
        );
    }
    if entries.len() != rank {
        bail!("expected {rank} coordinates, got {}", entries.len());
    }
    Ok(IntVector(entries))
}

fn parse_word_arg(p: &Presentation, parts: &[String]) -> Result<Word> {
    let joined = parts.join(" ");
    let tokens: Vec<&str> = joined.split_whitespace().collect();
    if tokens.is_empty() {
        bail!("empty word; write `1` for the identity");
    }
    if tokens == ["1"] {
        return Ok(Word::empty());
    }
    let mut letters = Vec::with_capacity(tokens.len());
    for t in &tokens {
        let g = p
            .generator_index(t)
            .ok_or_else(|| anyhow!("unknown generator `{t}`"))?;
        letters.push(g as u32);
    }
    Ok(Word(letters))
}

fn certify_status(rs: &RewriteSystem, needed: usize) -> Status {
    if rs.certifies_length(needed) {
        Status::Verified
    } else {
        match rs.confluence {
            Confluence::UpToLength(n) => Status::unknown(format!(
                "rewriting is confluent only up to length {n}, but the request needs length {needed}"
            )),
            Confluence::Full => Status::Verified,
        }
    }
}

fn element_text(e: &GroupElement, quotient: &FiniteQuotientTable) -> String {
    let coords: Vec<String> = e.vector.0.iter().map(|c| c.to_string()).collect();
    format!("({}) in coset {}", coords.join(", "), quotient.names[e.coset])
}

fn normalize(input: &str, word: &[String], o: Opts) -> Result<Outcome> {
    let b = load(input)?;
    let rs = completed(&b, &o)?;
    let w = parse_word_arg(&b.presentation, word)?;
    let nf = rs.normal_form(&w);
    let names = &b.presentation.generators;
    let status = certify_status(&rs, w.len());
    finish(
        &o,
        status,
        json!({
            "bundle": b.name,
            "input": w.format(names),
            "length": nf.len(),
            "normal_form": nf.format(names),
        }),
    )
}

fn complete_verb(input: &str, o: Opts) -> Result<Outcome> {
    let b = load(input)?;
    let rs = completed(&b, &o)?;
    let names = &b.presentation.generators;
    let rules: Vec<String> = rs
        .rules
        .iter()
        .map(|r| format!("{} -> {}", r.lhs.format(names), r.rhs.format(names)))
        .collect();
    let status = match rs.confluence {
        Confluence::Full => Status::Verified,
        Confluence::UpToLength(n) => {
            Status::unknown(format!("completion certifies confluence only up to length {n}"))
        }
    };
    finish(
        &o,
        status,
        json!({
            "bundle": b.name,
            "confluence": emit::confluence_json(&rs),
            "generator_count": rs.generator_count(),
            "rule_count": rules.len(),
            "rules": rules,
        }),
    )
}

fn enumerate_verb(input: &str, o: Opts) -> Result<Outcome> {
    let b = load(input)?;
    let rs = completed(&b, &o)?;
    let e = enumerate_elements(&rs, o.check_len);
    let status = certify_status(&rs, o.check_len);
    finish(
        &o,
        status,
        json!({
            "bundle": b.name,
            "check_len": o.check_len,
            "counts": e.counts(),
            "total": e.total(),
        }),
    )
}

fn affine_member(input: &str, vector: &str, o: Opts) -> Result<Outcome> {
    let m = affine_input(input)?;
    let v = parse_vector(vector, m.ambient_rank)?;
    let (status, membership) = match m.member(&v) {
        Membership::Member(cert) => (
            Status::Verified,
            json!({
                "certificate": {
                    "coefficients": cert.coefficients.iter().map(emit::bigint_json).collect::<Vec<_>>(),
                },
                "member": true,
            }),
        ),
        Membership::NotMember => (
            Status::refuted(format!("{} is not an element of {}", v, m.name)),
            json!({"member": false}),
        ),
        Membership::Unknown { reason } => (Status::unknown(reason), json!({"member": null})),
    };
    finish(
        &o,
        status,
        json!({
            "membership": membership,
            "monoid": m.name,
            "vector": emit::vec_json(&v),
        }),
    )
}

fn affine_minimal_primes(input: &str, o: Opts) -> Result<Outcome> {
    let m = affine_input(input)?;
    let names = &m.generator_names;
    let primes: Vec<Value> = m
        .minimal_primes()
        .iter()
        .map(|fp| {
            json!({
                "face": emit::name_list(&fp.face, names),
                "prime": emit::name_list(&fp.prime, names),
            })
        })
        .collect();
    finish(
        &o,
        Status::Verified,
        json!({
            "count": primes.len(),
            "dim": m.dim(),
            "group_rank": m.group_rank(),
            "minimal_primes": primes,
            "monoid": m.name,
            "unit_rank": m.unit_rank(),
        }),
    )
}

fn affine_check_normal(input: &str, o: Opts) -> Result<Outcome> {
    let m = affine_input(input)?;
    let normality = m.is_maximal_order();
    let status = match &normality {
        Normality::Normal => Status::Verified,
        Normality::NotNormal { witness } => {
            Status::refuted(format!("{witness} lies in the cone but not in the monoid"))
        }
        Normality::Unknown { reason } => Status::unknown(reason.clone()),
    };
    finish(
        &o,
        status,
        json!({
            "is_maximal_order": emit::normality_json(&normality),
            "monoid": m.name,
        }),
    )
}

fn affine_spectrum(input: &str, o: Opts) -> Result<Outcome> {
    let m = affine_input(input)?;
    let s = m.spectrum();
    let names = &m.generator_names;
    let nodes: Vec<Value> = s
        .nodes
        .iter()
        .map(|n| {
            json!({
                "coheight": n.coheight,
                "face": emit::name_list(&n.face, names),
                "height": n.height,
                "minimal": n.minimal,
                "prime": emit::name_list(&n.prime, names),
            })
        })
        .collect();
    finish(
        &o,
        Status::Verified,
        json!({
            "dim": s.dim,
            "group_rank": s.group_rank,
            "monoid": m.name,
            "nodes": nodes,
            "order": s.order,
            "unit_rank": s.unit_rank,
        }),
    )
}

fn group_delta_plus(input: &str, o: Opts) -> Result<Outcome> {
    let data = group_input(input, &o)?;
    let v = data.delta_plus_trivial();
    let status = if v.holds {
        Status::Verified
    } else {
        Status::refuted(format!(
            "periodic element {}",
            element_text(v.witness.as_ref().expect("failing verdict carries a witness"), &data.quotient)
        ))
    };
    finish(
        &o,
        status,
        json!({
            "check": "delta_plus_trivial",
            "group": data.name,
            "holds": v.holds,
            "quotient_order": data.quotient.order(),
            "verdict": emit::group_verdict_json(&v, &data.quotient),
        }),
    )
}

fn group_dihedral_free(input: &str, o: Opts) -> Result<Outcome> {
    let data = group_input(input, &o)?;
    let v = data.dihedral_free();
    let status = if v.holds {
        Status::Verified
    } else {
        Status::refuted(format!(
            "inverting element {}",
            element_text(v.witness.as_ref().expect("failing verdict carries a witness"), &data.quotient)
        ))
    };
    finish(
        &o,
        status,
        json!({
            "check": "dihedral_free",
            "group": data.name,
            "holds": v.holds,
            "quotient_order": data.quotient.order(),
            "verdict": emit::group_verdict_json(&v, &data.quotient),
        }),
    )
}

fn group_validate(input: &str, o: Opts) -> Result<Outcome> {
    let data = group_input(input, &o)?;
    let (status, valid, violation) = match data.validate() {
        Ok(()) => (Status::Verified, true, Value::Null),
        Err(v) => (Status::refuted(v.to_string()), false, json!(v.to_string())),
    };
    finish(
        &o,
        status,
        json!({
            "group": data.name,
            "quotient_order": data.quotient.order(),
            "rank": data.rank,
            "valid": valid,
            "violation": violation,
        }),
    )
}

fn crossed_pipeline(input: &str, o: &Opts) -> Result<(Bundle, RewriteSystem)> {
    let b = load(input)?;
    let rs = completed(&b, o)?;
    Ok((b, rs))
}

fn crossed_validate(input: &str, o: Opts) -> Result<Outcome> {
    let (b, rs) = crossed_pipeline(input, &o)?;
    match b.crossed_system(&rs, o.check_len) {
        Ok(cs) => finish(
            &o,
            Status::Verified,
            json!({
                "base_generator_count": cs.base.generators.len(),
                "bundle": b.name,
                "check_len": o.check_len,
                "class_reps": cs.class_reps,
                "classes": cs.component_classes,
                "components": cs.components(),
                "group_rank": cs.group_rank(),
                "transversal_size": cs.transversal.len(),
            }),
        ),
        Err(e) => finish(&o, crossed_status(&e), json!({"bundle": b.name, "error": e.to_string()})),
    }
}

fn crossed_orbits(input: &str, o: Opts) -> Result<Outcome> {
    let (b, rs) = crossed_pipeline(input, &o)?;
    let cs = match b.crossed_system(&rs, o.check_len) {
        Ok(cs) => cs,
        Err(e) => {
            return finish(&o, crossed_status(&e), json!({"bundle": b.name, "error": e.to_string()}))
        }
    };
    match prime_action_orbits(&cs) {
        Ok(od) => finish(
            &o,
            Status::Verified,
            json!({
                "bundle": b.name,
                "orbits": emit::orbits_json(&od, &cs.base),
            }),
        ),
        Err(e) => finish(&o, crossed_status(&e), json!({"bundle": b.name, "error": e.to_string()})),
    }
}

fn crossed_minimal_primes(input: &str, o: Opts) -> Result<Outcome> {
    let (b, rs) = crossed_pipeline(input, &o)?;
    let cs = match b.crossed_system(&rs, o.check_len) {
        Ok(cs) => cs,
        Err(e) => {
            return finish(&o, crossed_status(&e), json!({"bundle": b.name, "error": e.to_string()}))
        }
    };
    match minimal_primes_of_S(&cs) {
        Ok(report) => {
            let status = report.status.clone();
            finish(
                &o,
                status,
                json!({
                    "bundle": b.name,
                    "minimal_primes": emit::primes_report_json(&report),
                    "separation": report.separation.as_ref().map(emit::separation_json),
                }),
            )
        }
        Err(e) => finish(&o, crossed_status(&e), json!({"bundle": b.name, "error": e.to_string()})),
    }
}

fn crossed_maximality(input: &str, o: Opts) -> Result<Outcome> {
    let (b, rs) = crossed_pipeline(input, &o)?;
    let cs = match b.crossed_system(&rs, o.check_len) {
        Ok(cs) => cs,
        Err(e) => {
            return finish(&o, crossed_status(&e), json!({"bundle": b.name, "error": e.to_string()}))
        }
    };
    match maximality_check(&cs, o.radius, o.box_bound) {
        Ok(report) => {
            let status = report.status.clone();
            finish(
                &o,
                status,
                json!({
                    "bundle": b.name,
                    "maximality": emit::maximality_json(&report),
                }),
            )
        }
        Err(e) => finish(&o, crossed_status(&e), json!({"bundle": b.name, "error": e.to_string()})),
    }
}

fn crossed_rep_verify(input: &str, o: Opts) -> Result<Outcome> {
    let (b, rs) = crossed_pipeline(input, &o)?;
    let mats = b
        .rep
        .as_ref()
        .ok_or_else(|| anyhow!("bundle `{}` has no monomial_rep.txt", b.name))?;
    match verify_monomial_rep(&b.presentation, &rs, mats, o.check_len) {
        Ok(scan) => finish(
            &o,
            Status::Verified,
            json!({
                "bundle": b.name,
                "scan_len": scan.scan_len,
                "words_scanned": scan.words_scanned,
            }),
        ),
        Err(RepFailure::Shape(s)) => bail!("malformed representation: {s}"),
        Err(failure) => finish(
            &o,
            Status::refuted(failure.to_string()),
            json!({"bundle": b.name, "failure": failure.to_string()}),
        ),
    }
}

fn report_theorem33(input: &str, o: Opts) -> Result<Outcome> {
    let (b, rs) = crossed_pipeline(input, &o)?;
    let cs = match b.crossed_system(&rs, o.check_len) {
        Ok(cs) => cs,
        Err(e) => {
            return finish(&o, crossed_status(&e), json!({"bundle": b.name, "error": e.to_string()}))
        }
    };
    let report = theorem33_report_with(&cs, theorem_bounds(&o));
    let status = report.overall.clone();
    let verdict = emit::verdict_string(&report.overall);
    finish(
        &o,
        status,
        json!({
            "bundle": b.name,
            "report": emit::theorem33_json(&report),
            "verdict": verdict,
        }),
    )
}

/// The full pipeline as one document; `replay` compares recorded facts
/// against it.
fn observed_document(b: &Bundle, o: &Opts) -> Result<Value> {
    let rs = completed(b, o)?;
    let enumeration = enumerate_elements(&rs, o.check_len);
    let cs = b
        .crossed_system(&rs, o.check_len)
        .map_err(|e| anyhow!("extraction failed: {e}"))?;
    let ext = group_extension_of(&cs).map_err(|e| anyhow!("group extension failed: {e}"))?;
    let od = prime_action_orbits(&cs).map_err(|e| anyhow!("orbit decomposition failed: {e}"))?;
    let mp = minimal_primes_of_S(&cs).map_err(|e| anyhow!("prime lifting failed: {e}"))?;
    let report = theorem33_report_with(&cs, theorem_bounds(o));

    let mut confluence = emit::confluence_json(&rs);
    confluence
        .as_object_mut()
        .expect("confluence is an object")
        .insert("rule_count".into(), json!(rs.rules.len()));

    let mut doc = serde_json::Map::new();
    doc.insert("base".into(), emit::base_json(&cs.base));
    doc.insert("bundle".into(), json!(b.name));
    doc.insert("classes".into(), json!(cs.component_classes));
    doc.insert("components".into(), json!(cs.components()));
    doc.insert("confluence".into(), confluence);
    doc.insert(
        "group".into(),
        json!({
            "delta_plus": emit::group_verdict_json(&ext.data.delta_plus_trivial(), &ext.data.quotient),
            "dihedral_free": emit::group_verdict_json(&ext.data.dihedral_free(), &ext.data.quotient),
        }),
    );
    doc.insert("growth".into(), json!(enumeration.counts()));
    doc.insert("minimal_primes_s".into(), emit::primes_report_json(&mp));
    doc.insert("orbits".into(), emit::orbits_json(&od, &cs.base));
    doc.insert(
        "quotient".into(),
        json!({
            "names": ext.data.quotient.names,
            "order": ext.data.quotient.order(),
        }),
    );
    if let Some(mats) = &b.rep {
        let rep = match verify_monomial_rep(&b.presentation, &rs, mats, o.check_len) {
            Ok(scan) => json!({
                "scan_len": scan.scan_len,
                "status": {"status": "verified"},
                "words_scanned": scan.words_scanned,
            }),
            Err(RepFailure::Shape(s)) => bail!("malformed representation: {s}"),
            Err(failure) => json!({
                "status": {"status": "refuted", "witness": failure.to_string()},
            }),
        };
        doc.insert("rep".into(), rep);
    }
    doc.insert(
        "separation".into(),
        mp.separation
            .as_ref()
            .map(emit::separation_json)
            .unwrap_or(Value::Null),
    );
    doc.insert("theorem33".into(), emit::theorem33_json(&report));
    doc.insert("verdict".into(), json!(emit::verdict_string(&report.overall)));
    Ok(Value::Object(doc))
}

/// Records every place where a recorded value disagrees with the observed
/// document. Objects compare by the recorded keys only; arrays must match
/// exactly.
fn subset_diff(path: &str, expected: &Value, observed: &Value, out: &mut Vec<Value>) {
    match (expected, observed) {
        (Value::Object(em), Value::Object(om)) => {
            for (k, ev) in em {
                let child = if path.is_empty() {
                    k.clone()
                } else {
                    format!("{path}.{k}")
                };
                match om.get(k) {
                    Some(ov) => subset_diff(&child, ev, ov, out),
                    None => out.push(json!({"expected": ev, "observed": null, "path": child})),
                }
            }
        }
        (Value::Array(ea), Value::Array(oa)) => {
            if ea.len() != oa.len() {
                out.push(json!({"expected": expected, "observed": observed, "path": path}));
            } else {
                for (i, (ev, ov)) in ea.iter().zip(oa).enumerate() {
                    subset_diff(&format!("{path}[{i}]"), ev, ov, out);
                }
            }
        }
        _ => {
            if expected != observed {
                out.push(json!({"expected": expected, "observed": observed, "path": path}));
            }
        }
    }
}

fn replay(name: &str, o: Opts) -> Result<Outcome> {
    let b = load(name)?;
    let expected = b
        .expected
        .clone()
        .ok_or_else(|| anyhow!("bundle `{}` has no expected.json to replay against", b.name))?;
    let observed = observed_document(&b, &o)?;
    let mut diffs = Vec::new();
    subset_diff("", &expected, &observed, &mut diffs);
    let compared: Vec<String> = expected
        .as_object()
        .map(|m| m.keys().cloned().collect())
        .unwrap_or_default();
    let verdict = observed.get("verdict").cloned().unwrap_or(Value::Null);
    let status = if diffs.is_empty() {
        Status::Verified
    } else {
        Status::refuted(format!("{} recorded facts differ", diffs.len()))
    };
    finish(
        &o,
        status,
        json!({
            "bundle": b.name,
            "compared": compared,
            "diff": diffs,
            "verdict": verdict,
        }),
    )
}
