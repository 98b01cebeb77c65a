use cuntz_core::approx::{projection_sup_realization, summable_decomposition, DenseSubgroupSpec};
use cuntz_core::elliott::{functor_g_mor, functor_g_obj, validate_invariant, validate_morphism};
use cuntz_core::goodearl::{
    compare_elements, cutdown, dim_fn, realization_table, realize as goodearl_realize,
    spectrum_classify, verification_grid, verify_realization, DiagonalElement, MeasureSpec,
    RealizationSchedule, SpectrumClass,
};
use cuntz_core::ordmon::{
    archimedean_witness, box_elements, is_weakly_unperforated, OrderedMonoid,
};
use cuntz_core::sample;
use cuntz_core::scalar::Scalar;
use cuntz_core::wmodel::oracle::oracle_leq;
use cuntz_core::wmodel::{CuntzClass, K0StarCone, WModel};
use rand::Rng;
use serde_json::{json, Value};

use crate::doc::{rats, ClassDoc, Document, ElementDoc, Rat, Target, WModelDoc, Q};
use crate::error::{CliError, Result};
use crate::report::Report;

pub const SUITES: [&str; 5] = [
    "order-axioms",
    "strict-cone",
    "weak-unperforation",
    "archimedean",
    "oracle-agreement",
];

fn class_json(x: &CuntzClass<Q>) -> Value {
    serde_json::to_value(ClassDoc::from_class(x)).expect("classes serialize")
}

fn vec_json(v: &[Q]) -> Value {
    serde_json::to_value(rats(v)).expect("rationals serialize")
}

fn rat_json(q: &Q) -> Value {
    serde_json::to_value(Rat(q.clone())).expect("rationals serialize")
}

fn class_doc(x: &CuntzClass<Q>) -> Document {
    Document::Class(ClassDoc::from_class(x))
}

pub fn compare(model: &WModel<Q>, x: &CuntzClass<Q>, y: &CuntzClass<Q>) -> Result<Report> {
    let (xy, rule_xy) = model.compare_with_rule(x, y)?;
    let (yx, rule_yx) = model.compare_with_rule(y, x)?;
    let verdict = match (xy, yx) {
        (true, true) => "≤ and ≥",
        (true, false) => "≤ only",
        (false, true) => "≥ only",
        (false, false) => "neither",
    };
    let mut r = Report::new("compare")
        .arg("x", class_json(x))
        .arg("y", class_json(y));
    r.set("x_le_y", xy);
    r.set("x_le_y_rule", rule_xy.label());
    r.set("y_le_x", yx);
    r.set("y_le_x_rule", rule_yx.label());
    r.set("verdict", verdict);
    Ok(r)
}

pub fn add(model: &WModel<Q>, x: &CuntzClass<Q>, y: &CuntzClass<Q>) -> Result<Report> {
    let z = model.add(x, y)?;
    let mut r = Report::new("add")
        .arg("x", class_json(x))
        .arg("y", class_json(y));
    r.set("result", class_json(&z));
    r.document = Some(class_doc(&z));
    Ok(r)
}

pub fn scale(model: &WModel<Q>, x: &CuntzClass<Q>, lambda: &Q) -> Result<Report> {
    let z = model.scale(x, lambda)?;
    let mut r = Report::new("scale")
        .arg("x", class_json(x))
        .arg("lambda", rat_json(lambda));
    r.set("result", class_json(&z));
    r.document = Some(class_doc(&z));
    Ok(r)
}

pub fn soften(model: &WModel<Q>, x: &CuntzClass<Q>) -> Result<Report> {
    let z = model.soften(x)?;
    let mut r = Report::new("soften").arg("x", class_json(x));
    r.set("result", class_json(&z));
    r.document = Some(class_doc(&z));
    Ok(r)
}

pub fn complement(model: &WModel<Q>, x: &CuntzClass<Q>, y: &CuntzClass<Q>) -> Result<Report> {
    let z = model.complement(x, y)?;
    let mut r = Report::new("complement")
        .arg("x", class_json(x))
        .arg("y", class_json(y));
    match &z {
        Some(z) => {
            r.set("exists", true);
            r.set("result", class_json(z));
            r.document = Some(class_doc(z));
        }
        None => {
            r.set("exists", false);
            r.set("result", Value::Null);
        }
    }
    Ok(r)
}

pub fn k0star(model: &WModel<Q>, d: Option<&[Q]>) -> Result<Report> {
    let g = model.k0star();
    let mut r = Report::new("k0star");
    r.set("dimension", g.dimension());
    r.set("unit", vec_json(&g.unit()));
    if let Some(d) = d {
        r = r.arg("element", vec_json(d));
        r.set("cone_plus", g.cone_plus(d)?);
        let pp = g.cone_plusplus(d)?;
        r.set("cone_plusplus", pp);
        if pp {
            r.set("order_unit", g.is_order_unit(d)?);
        }
    }
    Ok(r)
}

pub fn order_unit(model: &WModel<Q>, d: &[Q]) -> Result<Report> {
    let g = model.k0star();
    let unit = g.is_order_unit(d)?;
    let mut r = Report::new("order-unit").arg("element", vec_json(d));
    r.set("order_unit", unit);
    r.set(
        "margin",
        g.order_unit_margin(d)?
            .map_or(Value::Null, |m| rat_json(&m)),
    );
    Ok(r)
}

/// Runs one property suite on a `wmodel` or `group` document.
pub fn check(doc: Document, suite: &str, seed: u64, bound: Option<i64>) -> Result<Report> {
    if !SUITES.contains(&suite) {
        return Err(CliError::invalid(format!(
            "unknown suite \"{suite}\"; expected one of {}",
            SUITES.join(", ")
        )));
    }
    let mut r = Report::new("check")
        .arg("suite", suite)
        .arg("seed", seed)
        .arg("document", doc.kind());
    if let Some(b) = bound {
        r = r.arg("bound", b);
    }
    match doc {
        Document::Group(g) => {
            let group = g.to_group()?;
            let b = bound.unwrap_or(10);
            let elements = group.box_elements(b);
            match suite {
                "weak-unperforation" => {
                    let v = is_weakly_unperforated(&group, &elements, 20);
                    r.set("pass", v.holds());
                    if let Some(w) = v.counterexample() {
                        r.set("counterexample", json!({ "x": w.x, "n": w.n }));
                    }
                }
                "archimedean" => {
                    let w = archimedean_witness(&group, &elements, 20);
                    r.set("pass", w.is_none());
                    if let Some(w) = w {
                        r.set("counterexample", json!({ "x": w.x, "y": w.y }));
                    }
                }
                _ => {
                    return Err(CliError::invalid(format!(
                        "suite \"{suite}\" needs a wmodel document"
                    )))
                }
            }
            r.set("elements", elements.len());
        }
        Document::Wmodel(m) => {
            let model = m.to_model()?;
            match suite {
                "order-axioms" => order_axioms(&model, seed, &mut r),
                "strict-cone" => strict_cone(&model, seed, bound.unwrap_or(3), &mut r)?,
                "weak-unperforation" => k0star_suite(&model, bound.unwrap_or(3), true, &mut r),
                "archimedean" => k0star_suite(&model, bound.unwrap_or(3), false, &mut r),
                _ => oracle_agreement(&model, seed, &mut r),
            }
        }
        other => {
            return Err(CliError::invalid(format!(
                "check needs a wmodel or group document, found {}",
                other.kind()
            )))
        }
    }
    Ok(r)
}

fn sampled_classes(model: &WModel<Q>, seed: u64, count: usize) -> Vec<CuntzClass<Q>> {
    let mut rng = sample::rng(seed);
    let mut xs = vec![model.zero_class(), model.unit_class()];
    xs.extend((0..count).map(|_| sample::class(&mut rng, model)));
    xs
}

fn order_axioms(model: &WModel<Q>, seed: u64, r: &mut Report) {
    let xs = sampled_classes(model, seed, 22);
    let le: Vec<Vec<bool>> = xs
        .iter()
        .map(|a| xs.iter().map(|b| OrderedMonoid::leq(model, a, b)).collect())
        .collect();
    let mut failures: Vec<Value> = Vec::new();
    let n = xs.len();
    let mut fail = |law: &str, parts: &[&CuntzClass<Q>]| {
        if failures.iter().all(|f| f["law"] != law) {
            failures.push(json!({
                "law": law,
                "classes": parts.iter().map(|x| class_json(x)).collect::<Vec<_>>(),
            }));
        }
    };
    for i in 0..n {
        if !le[i][i] {
            fail("reflexive", &[&xs[i]]);
        }
        if !le[0][i] {
            fail("zero is least", &[&xs[i]]);
        }
        for j in 0..n {
            if i != j && le[i][j] && le[j][i] && xs[i] != xs[j] {
                fail("antisymmetric", &[&xs[i], &xs[j]]);
            }
            let sum = OrderedMonoid::add(model, &xs[i], &xs[j]);
            if sum != OrderedMonoid::add(model, &xs[j], &xs[i]) {
                fail("commutative", &[&xs[i], &xs[j]]);
            }
            for k in 0..n {
                if le[i][j] && le[j][k] && !le[i][k] {
                    fail("transitive", &[&xs[i], &xs[j], &xs[k]]);
                }
                if le[i][j] {
                    let a = OrderedMonoid::add(model, &xs[i], &xs[k]);
                    let b = OrderedMonoid::add(model, &xs[j], &xs[k]);
                    if !OrderedMonoid::leq(model, &a, &b) {
                        fail("addition respects order", &[&xs[i], &xs[j], &xs[k]]);
                    }
                }
            }
        }
    }
    r.set("pass", failures.is_empty());
    r.set("classes", n);
    r.set("failures", failures);
}

fn strict_cone(model: &WModel<Q>, seed: u64, bound: i64, r: &mut Report) -> Result<()> {
    let bound =
        u32::try_from(bound).map_err(|_| CliError::invalid("bound must be non-negative"))?;
    let mut rng = sample::rng(seed);
    let gens: Vec<CuntzClass<Q>> = (0..3)
        .map(|_| loop {
            let x = sample::class(&mut rng, model);
            if !x.is_zero() {
                break x;
            }
        })
        .collect();
    let p = model.presentation_from_classes(&gens)?;
    let index = p.cone_plusplus_index(bound)?;
    let group = index.group();
    let elements = p.elements_up_to(bound);
    let to_i = |e: &Vec<u64>| e.iter().map(|&c| c as i64).collect::<Vec<_>>();
    let samples: Vec<_> = (0..500)
        .map(|_| {
            let a = &elements[rng.random_range(0..elements.len())];
            let b = &elements[rng.random_range(0..elements.len())];
            group.sub(&group.class_of(&to_i(a)), &group.class_of(&to_i(b)))
        })
        .collect();
    let report = index.check_strict(&samples)?;
    r.set("pass", report.is_clean());
    r.set(
        "generators",
        gens.iter().map(class_json).collect::<Vec<_>>(),
    );
    r.set(
        "group",
        json!({ "free_rank": group.free_rank, "torsion": group.torsion }),
    );
    r.set("checked", report.checked);
    r.set("violations", report.violations);
    r.set("one_sided", report.one_sided);
    r.set("inconclusive", report.inconclusive);
    Ok(())
}

fn k0star_suite(model: &WModel<Q>, bound: i64, weak: bool, r: &mut Report) {
    let g = model.k0star();
    let elements: Vec<Vec<Q>> = box_elements(g.dimension(), bound)
        .into_iter()
        .map(|v| v.into_iter().map(Q::from_int).collect())
        .collect();
    let mut pass = true;
    let mut per_cone = serde_json::Map::new();
    // The strict cone is simple but not Archimedean once there are two
    // traces, so only the pointwise cone is tested for that property.
    let cones: &[(&str, K0StarCone)] = if weak {
        &[
            ("plus", K0StarCone::Plus),
            ("plusplus", K0StarCone::PlusPlus),
        ]
    } else {
        &[("plusplus", K0StarCone::PlusPlus)]
    };
    for &(name, cone) in cones {
        let order = g.ordered(cone);
        let entry = if weak {
            let v = is_weakly_unperforated(&order, &elements, 20);
            pass &= v.holds();
            match v.counterexample() {
                Some(w) => json!({ "pass": false, "x": vec_json(&w.x), "n": w.n }),
                None => json!({ "pass": true }),
            }
        } else {
            match archimedean_witness(&order, &elements, 20) {
                Some(w) => {
                    pass = false;
                    json!({ "pass": false, "x": vec_json(&w.x), "y": vec_json(&w.y) })
                }
                None => json!({ "pass": true }),
            }
        };
        per_cone.insert(name.into(), entry);
    }
    r.set("pass", pass);
    r.set("elements", elements.len());
    r.set("cones", Value::Object(per_cone));
}

fn oracle_agreement(model: &WModel<Q>, seed: u64, r: &mut Report) {
    let mut rng = sample::rng(seed);
    let pairs = 2000;
    let mut disagreements = Vec::new();
    for _ in 0..pairs {
        let x = sample::class(&mut rng, model);
        let y = sample::class(&mut rng, model);
        let got = model.compare(&x, &y).expect("sampled classes are valid");
        if got != oracle_leq(model, &x, &y) && disagreements.len() < 10 {
            disagreements.push(json!({ "x": class_json(&x), "y": class_json(&y), "compare": got }));
        }
    }
    r.set("pass", disagreements.is_empty());
    r.set("pairs", pairs);
    r.set("disagreements", disagreements);
}

pub fn functor(invariant: &Document, morphism: Option<Document>) -> Result<Report> {
    let inv = invariant.clone().into_invariant()?;
    let report = validate_invariant(&inv);
    if !report.is_valid() {
        return Err(CliError::invalid(format!(
            "invalid invariant: {}",
            report.violations.join("; ")
        )));
    }
    let model = functor_g_obj(&inv)?;
    let mut r = Report::new("functor");
    r.set(
        "model",
        serde_json::to_value(WModelDoc::from_model(&model)).expect("serializes"),
    );
    // Trace labels do not affect the isomorphism type.
    let is_w_of_z = match (&model, &WModel::<Q>::w_of_z()) {
        (WModel::Finite { k0: a, .. }, WModel::Finite { k0: b, .. }) => a == b,
        _ => false,
    };
    r.set("is_w_of_z", is_w_of_z);
    r.document = Some(Document::Wmodel(WModelDoc::from_model(&model)));
    if let Some(m) = morphism {
        let data = m.into_morphism()?;
        if data.source != inv {
            return Err(CliError::invalid(
                "the morphism's source is not the given invariant",
            ));
        }
        let validation = validate_morphism(&data.theta, &data.source, &data.target)?;
        r.set("morphism_valid", validation.is_valid());
        r.set("violations", validation.violations.clone());
        if !validation.is_valid() {
            r.exit_code = 2;
            return Ok(r);
        }
        let phi = functor_g_mor(&data.theta, &data.source, &data.target)?;
        let soft: Vec<Vec<Rat>> = phi
            .soft_action()
            .to_rows()
            .iter()
            .map(|row| rats(row))
            .collect();
        r.set(
            "induced",
            json!({
                "theta0": phi.theta0.to_rows(),
                "soft_action": soft,
                "is_identity": phi.is_identity(),
                "target_model": WModelDoc::from_model(&phi.target),
            }),
        );
    }
    Ok(r)
}

pub fn morphism_check(doc: Document) -> Result<Report> {
    let data = doc.into_morphism()?;
    let src = validate_invariant(&data.source);
    let tgt = validate_invariant(&data.target);
    let mor = validate_morphism(&data.theta, &data.source, &data.target)?;
    let valid = src.is_valid() && tgt.is_valid() && mor.is_valid();
    let mut r = Report::new("morphism-check");
    r.set("valid", valid);
    r.set("source_violations", src.violations);
    r.set("target_violations", tgt.violations);
    r.set("violations", mor.violations);
    if !valid {
        r.exit_code = 2;
    }
    Ok(r)
}

pub fn realize(
    target: Document,
    schedule: Option<Document>,
    stages: Option<u32>,
    grid: usize,
) -> Result<Report> {
    let schedule = schedule.map(Document::into_schedule).transpose()?;
    let stages = stages.unwrap_or(5);
    let mut r = Report::new("realize").arg("stages", stages);
    match target.into_target()? {
        Target::Vector(f) => {
            r = r.arg("target", vec_json(&f));
            match schedule.and_then(|s| {
                if s.sizes.is_some() {
                    Some(Err(CliError::invalid(
                        "matrix sizes apply to step targets; use \"denominators\"",
                    )))
                } else {
                    s.denominators.map(Ok)
                }
            }) {
                Some(denoms) => {
                    let spec = DenseSubgroupSpec::new(denoms?)?;
                    let out = projection_sup_realization(&f, &spec, stages as usize)?;
                    let mut table = String::from("stage\tdenominator\ttrace\tf\tp\tf_minus_p\n");
                    let mut rows = Vec::new();
                    for (i, st) in out.iter().enumerate() {
                        for (j, fj) in f.iter().enumerate() {
                            table.push_str(&format!(
                                "{}\t{}\t{}\t{}\t{}\t{}\n",
                                i + 1,
                                st.denominator,
                                j + 1,
                                fj,
                                st.values[j],
                                fj - &st.values[j]
                            ));
                        }
                        rows.push(json!({
                            "stage": i + 1,
                            "denominator": st.denominator,
                            "numerators": st.numerators,
                            "values": vec_json(&st.values),
                            "gap": rat_json(&st.gap),
                        }));
                    }
                    let below = out
                        .iter()
                        .all(|st| st.values.iter().zip(&f).all(|(p, v)| p < v));
                    r.set("method", "projection-sup");
                    r.set("stages", rows);
                    r.set("pass", below);
                    r.table = Some(table);
                }
                None => {
                    let rep = summable_decomposition(&f, stages)?;
                    let c = &rep.certificate;
                    r.set("method", "dyadic");
                    r.set("first_stage", rep.first_stage);
                    r.set(
                        "stages",
                        rep.stages
                            .iter()
                            .map(|s| {
                                json!({
                                    "stage": s.index,
                                    "g": vec_json(&s.g),
                                    "h": vec_json(&s.h),
                                    "gap": rat_json(&s.gap),
                                })
                            })
                            .collect::<Vec<_>>(),
                    );
                    r.set("h_norm_sum", rat_json(&rep.h_norm_sum));
                    r.set("h_norm_bound", rat_json(&rep.h_norm_bound));
                    r.set(
                        "certificate",
                        json!({
                            "strictly_positive": c.strictly_positive,
                            "strictly_below_target": c.strictly_below_target,
                            "strictly_increasing": c.strictly_increasing,
                            "gap_bound": c.gap_bound,
                            "summable": c.summable,
                        }),
                    );
                    r.set("pass", c.all());
                    r.table = Some(rep.to_tsv());
                }
            }
        }
        Target::Step(f) => {
            let sched = match schedule {
                Some(s) => match s.sizes {
                    Some(sizes) => RealizationSchedule::new(sizes)?,
                    None => {
                        return Err(CliError::invalid(
                            "step targets need a schedule with \"sizes\"",
                        ))
                    }
                },
                None => RealizationSchedule::dyadic(stages)?,
            };
            let out = goodearl_realize(&f, &sched, stages as usize)?;
            let points = verification_grid(&f, grid);
            let checks = verify_realization(&f, &out, &points);
            r = r.arg("grid_points", points.len());
            r.set("method", "goodearl");
            r.set(
                "stages",
                checks
                    .iter()
                    .map(|c| {
                        json!({
                            "stage": c.index,
                            "n": c.size,
                            "dimension_mismatches": c.dimension_mismatches.len(),
                            "approximant_gap_ok": c.approximant_gap_ok,
                            "increasing": c.increasing,
                            "increment": rat_json(&c.increment),
                            "increment_bound": rat_json(&c.increment_bound),
                            "ok": c.ok(),
                        })
                    })
                    .collect::<Vec<_>>(),
            );
            r.set("pass", checks.iter().all(|c| c.ok()));
            r.table = Some(realization_table(&f, &out, &points));
            if let Some(last) = out.last() {
                r.document = Some(Document::Element(ElementDoc::from_element(&last.element)));
            }
        }
    }
    Ok(r)
}

pub fn goodearl(
    element: &DiagonalElement<Q>,
    measure: &MeasureSpec<Q>,
    eps: Option<&Q>,
    against: Option<&DiagonalElement<Q>>,
) -> Result<Report> {
    let mut r = Report::new("goodearl").arg("size", element.size());
    let class = match spectrum_classify(element) {
        SpectrumClass::ProjectionLike => "projection-like",
        SpectrumClass::PurelyPositive => "purely-positive",
    };
    r.set("norm", rat_json(&element.norm()));
    r.set("spectrum", element.spectrum().to_string());
    r.set("spectrum_class", class);
    r.set("dimension", rat_json(&dim_fn(element, measure)));
    r.set(
        "cozero_sets",
        element
            .entries()
            .iter()
            .map(|g| Value::String(g.coz().to_string()))
            .collect::<Vec<_>>(),
    );
    if let Some(e) = eps {
        r = r.arg("eps", rat_json(e));
        let c = cutdown(element, e)?;
        r.set("cutdown_dimension", rat_json(&dim_fn(&c, measure)));
        r.set(
            "cutdown",
            serde_json::to_value(ElementDoc::from_element(&c)).expect("serializes"),
        );
        r.document = Some(Document::Element(ElementDoc::from_element(&c)));
    }
    if let Some(b) = against {
        r.set("dimension_against", rat_json(&dim_fn(b, measure)));
        r.set(
            "below_against",
            compare_elements(element, b, std::slice::from_ref(measure))?,
        );
    }
    Ok(r)
}
