//! Subcommand implementations. Each returns a [`Report`] holding the text
//! output, a JSON mirror and whether the checks passed.

use std::fmt::Write as _;

use qlin_core::bialgebra::{
    coassociativity_check, comultiplication_check, counit_check, determinant_2x2,
    determinant_closed_forms, determinant_forms_agree, determinant_multiplicativity,
};
use qlin_core::hom::{derive_relations_general, derive_relations_sudbery, spans_equal};
use qlin_core::linalg::format_scalar;
use qlin_core::pbw::{pbw_criterion, pbw_criterion_only, pbw_extract_constant};
use qlin_core::rewrite::{build_rewrite_system, confluence_check, Alphabet};
use qlin_core::rmatrix::{normalized_b, yang_baxter_check};
use qlin_core::{ComposableTriple, HomAlgebra, NCPoly, QuantumObject, RelationSet, Scalar};
use serde_json::{json, Value};

use crate::error::CliError;

#[derive(Debug, Clone)]
pub struct Report {
    pub text: String,
    pub json: Value,
    pub passed: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Form {
    General,
    Sudbery,
    Both,
}

fn signature(obj: &QuantumObject) -> String {
    let (even, odd) = obj.space().super_dims();
    format!("({even}|{odd})")
}

fn relation_lines(rels: &RelationSet) -> Vec<String> {
    rels.basis()
        .iter()
        .map(|row| {
            NCPoly::from_pair_coordinates(rels.alphabet(), row)
                .display(rels.alphabet())
                .to_string()
        })
        .collect()
}

fn ordering_text(ordering: &Option<Vec<usize>>) -> String {
    match ordering {
        Some(o) => o
            .iter()
            .map(|i| i.to_string())
            .collect::<Vec<_>>()
            .join(" < "),
        None => "none".to_string(),
    }
}

fn constant_text(c: &Option<Scalar>) -> String {
    c.as_ref().map_or_else(|| "none".to_string(), format_scalar)
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

pub fn cmd_object(obj: &QuantumObject, name: &str) -> Report {
    let dims = obj.component_dims();
    let mut text = format!("{name}: {} object on {}\n", obj.kind_name(), signature(obj));
    if dims.len() == 2 {
        let _ = writeln!(text, "dim I={}, dim J={}", dims[0], dims[1]);
    } else {
        let list: Vec<String> = dims.iter().map(|d| d.to_string()).collect();
        let _ = writeln!(text, "component dims {}", list.join(", "));
    }
    let json = json!({
        "name": name,
        "kind": obj.kind_name(),
        "parities": obj.space().parities(),
        "component_dims": dims,
    });
    Report {
        text,
        json,
        passed: true,
    }
}

pub fn cmd_hom(
    source: &QuantumObject,
    target: &QuantumObject,
    form: Form,
) -> Result<Report, CliError> {
    let general = match form {
        Form::General | Form::Both => Some(derive_relations_general(source, target)?),
        Form::Sudbery => None,
    };
    let closed = match form {
        Form::Sudbery | Form::Both => Some(derive_relations_sudbery(source, target)?),
        Form::General => None,
    };
    let mut text = String::new();
    let mut json = json!({});
    for (label, rels) in [("general", &general), ("sudbery", &closed)] {
        let Some(rels) = rels else { continue };
        let lines = relation_lines(rels);
        let _ = writeln!(
            text,
            "{label} form: {} relations in {} generators",
            lines.len(),
            rels.alphabet().len()
        );
        for line in &lines {
            let _ = writeln!(text, "  {line} = 0");
        }
        json[label] = json!({ "rank": rels.rank(), "relations": lines });
    }
    let mut passed = true;
    if let (Some(g), Some(c)) = (&general, &closed) {
        passed = spans_equal(g, c)?;
        let _ = writeln!(text, "spans equal: {}", yes_no(passed));
        json["spans_equal"] = json!(passed);
    }
    Ok(Report { text, json, passed })
}

pub fn cmd_pbw(
    source: &QuantumObject,
    target: &QuantumObject,
    degree: usize,
    oracle: bool,
) -> Result<Report, CliError> {
    let verdict = if oracle {
        pbw_criterion(source, target, degree)?
    } else {
        pbw_criterion_only(source, target)
    };
    let h = HomAlgebra::new(source, target)?;
    let system = build_rewrite_system(h.alphabet(), h.relations().matrix())?;
    let confluence = confluence_check(&system);
    let failures = confluence.failures().len();

    let mut head = if verdict.criterion_holds {
        format!("PBW: YES, c={}", constant_text(&verdict.constant_source))
    } else {
        "PBW: NO".to_string()
    };
    if !verdict.oracle_dims.is_empty() {
        let dims: Vec<String> = verdict
            .oracle_dims
            .iter()
            .map(|(_, got, want)| format!("{got}/{want}"))
            .collect();
        let _ = write!(head, ", dims {}", dims.join(", "));
    }
    let mut text = head + "\n";
    let _ = writeln!(
        text,
        "source: c={}, ordering {}",
        constant_text(&verdict.constant_source),
        ordering_text(&verdict.ordering_source)
    );
    let _ = writeln!(
        text,
        "target: c={}, ordering {}",
        constant_text(&verdict.constant_target),
        ordering_text(&verdict.ordering_target)
    );
    let _ = writeln!(
        text,
        "confluence: {} overlaps, {failures} unresolved{}",
        confluence.overlaps.len(),
        if system.degree2_defect().is_some() {
            ", degree-2 defect"
        } else {
            ""
        }
    );
    let consistent = !oracle || verdict.oracle_classical() == verdict.criterion_holds;
    if !consistent {
        let _ = writeln!(text, "oracle disagrees with the criterion");
    }
    let json = json!({
        "criterion_holds": verdict.criterion_holds,
        "constant_source": verdict.constant_source.as_ref().map(format_scalar),
        "constant_target": verdict.constant_target.as_ref().map(format_scalar),
        "ordering_source": verdict.ordering_source,
        "ordering_target": verdict.ordering_target,
        "oracle_dims": verdict
            .oracle_dims
            .iter()
            .map(|(d, got, want)| json!({ "degree": d, "computed": got, "classical": want }))
            .collect::<Vec<_>>(),
        "overlaps": confluence.overlaps.len(),
        "unresolved_overlaps": failures,
    });
    Ok(Report {
        text,
        json,
        passed: verdict.criterion_holds && consistent,
    })
}

pub fn cmd_yb(obj: &QuantumObject) -> Result<Report, CliError> {
    let Some(ex) = pbw_extract_constant(obj) else {
        let text =
            "no constant c with p = q c^(±1) under a total order; B± undefined\n".to_string();
        return Ok(Report {
            text,
            json: json!({ "constant": null }),
            passed: false,
        });
    };
    let c = ex.constant;
    let mut text = format!("c={}\n", format_scalar(&c));
    let mut json = json!({ "constant": format_scalar(&c) });
    let mut passed = true;
    for (label, lambda) in [("B+", c.clone()), ("B-", c.recip())] {
        let ok = yang_baxter_check(&normalized_b(obj, &lambda)?);
        passed &= ok;
        let _ = writeln!(
            text,
            "{label} = P1 - {} P2: braid relation {}",
            format_scalar(&lambda),
            if ok { "holds" } else { "fails" }
        );
        json[label] = json!(ok);
    }
    Ok(Report { text, json, passed })
}

pub fn cmd_bialgebra(objects: &[QuantumObject; 3]) -> Result<Report, CliError> {
    let [a, b, c] = objects;
    let t = ComposableTriple::new(a, b, c)?;
    let delta = comultiplication_check(&t);
    let coassoc = coassociativity_check([a, b, c, a]);
    let mut counit = true;
    for obj in objects {
        counit &= counit_check(obj)?;
    }
    let text = format!(
        "comultiplication: {}\ncoassociativity: {}\ncounit: {}\n",
        yes_no(delta),
        yes_no(coassoc),
        yes_no(counit)
    );
    let json = json!({ "comultiplication": delta, "coassociativity": coassoc, "counit": counit });
    Ok(Report {
        text,
        json,
        passed: delta && coassoc && counit,
    })
}

pub fn cmd_det(objects: &[QuantumObject]) -> Result<Report, CliError> {
    let (a, b) = (&objects[0], &objects[1]);
    let alphabet = Alphabet::matrix_entries(a.space().parities(), b.space().parities());
    let det = determinant_2x2(a, b)?;
    let forms: Vec<String> = determinant_closed_forms(a, b)?
        .iter()
        .map(|f| f.display(&alphabet).to_string())
        .collect();
    let agree = determinant_forms_agree(a, b)?;
    let mut text = format!("det = {}\n", det.display(&alphabet));
    for f in &forms {
        let _ = writeln!(text, "  ≡ {f}");
    }
    let _ = writeln!(text, "closed forms agree: {}", yes_no(agree));
    let mut json = json!({
        "det": det.display(&alphabet).to_string(),
        "closed_forms": forms,
        "forms_agree": agree,
    });
    let mut passed = agree;
    if let Some(c) = objects.get(2) {
        let t = ComposableTriple::new(a, b, c)?;
        let mult = determinant_multiplicativity(&t)?;
        let _ = writeln!(text, "multiplicative: {}", yes_no(mult));
        json["multiplicative"] = json!(mult);
        passed &= mult;
    }
    Ok(Report { text, json, passed })
}
