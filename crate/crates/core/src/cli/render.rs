use std::collections::BTreeMap;

use serde_json::{json, Value};

use crate::acbm::{Analysis, ClassFlags, ClassificationReport};
use crate::scalar::{format_rational, Polynomial, Rational, Scalar};
use crate::tensor::{Frame, Tensor};

pub const CLASSIFICATION_SCHEMA: &str = "bmetric-classification/1";
pub const ANALYSIS_SCHEMA: &str = "bmetric-analysis/1";

pub struct Section {
    pub key: &'static str,
    pub note: Option<&'static str>,
    pub entries: Vec<(String, String)>,
}

fn vector(frame: &Frame, v: &[Scalar]) -> String {
    let parts: Vec<String> = v
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| {
            if c.len() == 1 {
                format!("{c}*{}", frame.label(i))
            } else {
                format!("({c})*{}", frame.label(i))
            }
        })
        .collect();
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    }
}

fn at(frame: &Frame, ix: &[usize]) -> String {
    ix.iter().map(|&i| frame.label(i)).collect::<Vec<_>>().join(",")
}

fn components(frame: &Frame, name: &str, t: &Tensor, keep: impl Fn(&[usize]) -> bool) -> Vec<(String, String)> {
    t.nonzero()
        .into_iter()
        .filter(|(ix, _)| keep(ix))
        .map(|(ix, v)| (format!("{name}({})", at(frame, &ix)), v.to_string()))
        .collect()
}

pub fn flag_entries(f: &ClassFlags) -> Vec<(&'static str, bool)> {
    vec![
        ("F0", f.f0),
        ("U", f.u),
        ("U1", f.u1),
        ("U2", f.u2),
        ("F4", f.f4),
        ("F5", f.f5),
        ("F6", f.f6),
        ("isotropic-F0", f.isotropic_f0),
        ("normal", f.normal_n_zero),
        ("d-eta-zero", f.eta_closed),
    ]
}

fn classes(f: &ClassFlags) -> Vec<&'static str> {
    flag_entries(f)
        .into_iter()
        .filter(|(name, v)| *v && !matches!(*name, "normal" | "d-eta-zero"))
        .map(|(n, _)| n)
        .collect()
}

fn witness_entries(frame: &Frame, c: &ClassificationReport) -> Vec<(String, String)> {
    c.witnesses
        .iter()
        .map(|w| {
            let place = if w.indices.is_empty() {
                w.condition.to_string()
            } else {
                format!("{} at ({})", w.condition, at(frame, &w.indices))
            };
            (place, w.residual.to_string())
        })
        .collect()
}

pub fn assignment_json(assignment: &BTreeMap<String, Rational>) -> Value {
    Value::Object(
        assignment
            .iter()
            .map(|(k, v)| (k.clone(), Value::String(format_rational(v))))
            .collect(),
    )
}

fn assignment_text(assignment: &BTreeMap<String, Rational>) -> String {
    if assignment.is_empty() {
        "none (symbolic)".into()
    } else {
        assignment
            .iter()
            .map(|(k, v)| format!("{k}={}", format_rational(v)))
            .collect::<Vec<_>>()
            .join(", ")
    }
}

pub fn classification_text(file: &str, assignment: &BTreeMap<String, Rational>, a: &Analysis) -> String {
    let frame = a.structure.frame();
    let c = &a.classification;
    let mut s = format!("file: {file}\nassignment: {}\n", assignment_text(assignment));
    let cls = classes(&c.flags);
    s.push_str(&format!(
        "classes: {}\n",
        if cls.is_empty() { "none of the listed classes".to_string() } else { cls.join(", ") }
    ));
    s.push_str("flags:\n");
    for (name, v) in flag_entries(&c.flags) {
        s.push_str(&format!("  {name:<13} {v}\n"));
    }
    let w = witness_entries(frame, c);
    if !w.is_empty() {
        s.push_str("unsatisfied conditions:\n");
        for (place, r) in w {
            s.push_str(&format!("  {place}: {r}\n"));
        }
    }
    s
}

pub fn classification_json(file: &str, assignment: &BTreeMap<String, Rational>, a: &Analysis) -> Value {
    let frame = a.structure.frame();
    let c = &a.classification;
    let flags: serde_json::Map<String, Value> = flag_entries(&c.flags)
        .into_iter()
        .map(|(k, v)| (k.to_string(), Value::Bool(v)))
        .collect();
    let witnesses: Vec<Value> = c
        .witnesses
        .iter()
        .map(|w| {
            json!({
                "condition": w.condition,
                "components": w.indices.iter().map(|&i| frame.label(i)).collect::<Vec<_>>(),
                "residual": w.residual.to_string(),
            })
        })
        .collect();
    json!({
        "schema": CLASSIFICATION_SCHEMA,
        "file": file,
        "assignment": assignment_json(assignment),
        "classes": classes(&c.flags),
        "flags": flags,
        "witnesses": witnesses,
    })
}

/// Every derived object, as named sections of `(component, value)` pairs.
pub fn analysis_sections(a: &Analysis) -> Vec<Section> {
    let frame = a.structure.frame();
    let n = a.structure.dim();
    let unit = |j: usize| -> Vec<Scalar> {
        (0..n).map(|k| if k == j { Polynomial::one() } else { Polynomial::zero() }).collect()
    };

    let mut structure = vec![
        ("dimension".to_string(), n.to_string()),
        ("basis".to_string(), frame.labels().join(" ")),
    ];
    let (pos, neg) = a.structure.metric().signature();
    structure.push(("signature (positive, negative)".into(), format!("({pos}, {neg})")));
    for j in 0..n {
        structure.push((format!("phi {}", frame.label(j)), vector(frame, &a.structure.phi_of(&unit(j)))));
    }
    let g = a.structure.metric().g();
    for i in 0..n {
        for j in i..n {
            if !num_traits::Zero::is_zero(g.get(i, j)) {
                structure.push((format!("g({})", at(frame, &[i, j])), format_rational(g.get(i, j))));
            }
        }
    }

    let mut brackets = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let b = a.algebra.bracket_basis(i, j);
            if b.iter().any(|c| !c.is_zero()) {
                brackets.push((format!("[{}, {}]", frame.label(i), frame.label(j)), vector(frame, &b)));
            }
        }
    }

    let mut connection = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let v = a.connection.nabla(i, j);
            if v.iter().any(|c| !c.is_zero()) {
                connection.push((format!("nabla_{} {}", frame.label(i), frame.label(j)), vector(frame, &v)));
            }
        }
    }

    let lee = vec![
        ("theta".to_string(), vector_form(frame, &a.lee.theta)),
        ("theta*".to_string(), vector_form(frame, &a.lee.theta_star)),
        ("omega".to_string(), vector_form(frame, &a.lee.omega)),
    ];

    let mut normality = components(frame, "N", &a.normality.nijenhuis, |ix| ix[0] < ix[1]);
    normality.extend(components(frame, "d eta", &a.normality.d_eta, |ix| ix[0] < ix[1]));

    let norms = vec![
        ("|nabla phi|^2".to_string(), a.norms.sq_nabla_phi.to_string()),
        ("|nabla eta|^2".to_string(), a.norms.sq_nabla_eta.to_string()),
        ("|nabla xi|^2".to_string(), a.norms.sq_nabla_xi.to_string()),
    ];

    let curvature = components(frame, "R", &a.curvature.riemann, |ix| {
        ix[0] < ix[1] && ix[2] < ix[3] && (ix[0], ix[1]) <= (ix[2], ix[3])
    });
    let mut ricci = components(frame, "rho", &a.curvature.ricci, |ix| ix[0] <= ix[1]);
    ricci.push(("tau".into(), a.curvature.scalar.to_string()));
    let mut rho_star = components(frame, "rho*", &a.rho_star, |_| true);
    rho_star.push(("tau*".into(), a.tau_star.to_string()));

    let mut classification: Vec<(String, String)> = flag_entries(&a.classification.flags)
        .into_iter()
        .map(|(k, v)| (k.to_string(), v.to_string()))
        .collect();
    classification.extend(witness_entries(frame, &a.classification));

    vec![
        Section { key: "structure", note: None, entries: structure },
        Section { key: "brackets", note: Some("pairs not listed commute"), entries: brackets },
        Section { key: "connection", note: Some("pairs not listed give 0"), entries: connection },
        Section {
            key: "fundamental-tensor",
            note: Some("F(x,y,z) = g((nabla_x phi)y, z); components not listed are 0"),
            entries: components(frame, "F", a.fundamental.tensor(), |_| true),
        },
        Section { key: "lee-forms", note: None, entries: lee },
        Section {
            key: "nabla-eta",
            note: Some("h(x,y) = (nabla_x eta)y"),
            entries: components(frame, "h", &a.h, |_| true),
        },
        Section { key: "normality", note: Some("skew components with x < y"), entries: normality },
        Section { key: "norms", note: None, entries: norms },
        Section {
            key: "curvature",
            note: Some("R(x,y,z,w) = g(R(x,y)z, w); the remaining components follow from the symmetries"),
            entries: curvature,
        },
        Section { key: "ricci", note: None, entries: ricci },
        Section { key: "associated-ricci", note: None, entries: rho_star },
        Section { key: "classification", note: None, entries: classification },
    ]
}

fn vector_form(frame: &Frame, t: &Tensor) -> String {
    let v: Vec<Scalar> = (0..t.dim()).map(|i| t.get(&[i]).clone()).collect();
    vector(frame, &v)
}

pub fn analysis_text(file: &str, assignment: &BTreeMap<String, Rational>, a: &Analysis) -> String {
    let mut s = format!("file: {file}\nassignment: {}\n", assignment_text(assignment));
    for sec in analysis_sections(a) {
        s.push_str(&format!("\n== {} ==\n", sec.key));
        if let Some(note) = sec.note {
            s.push_str(&format!("({note})\n"));
        }
        if sec.entries.is_empty() {
            s.push_str("  (none)\n");
        }
        for (k, v) in sec.entries {
            s.push_str(&format!("  {k} = {v}\n"));
        }
    }
    s
}

pub fn analysis_json(file: &str, assignment: &BTreeMap<String, Rational>, a: &Analysis) -> Value {
    let sections: Vec<Value> = analysis_sections(a)
        .into_iter()
        .map(|sec| {
            json!({
                "name": sec.key,
                "entries": sec.entries.into_iter().map(|(k, v)| json!({"component": k, "value": v})).collect::<Vec<_>>(),
            })
        })
        .collect();
    json!({
        "schema": ANALYSIS_SCHEMA,
        "file": file,
        "assignment": assignment_json(assignment),
        "sections": sections,
    })
}
