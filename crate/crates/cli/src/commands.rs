//! Command dispatch: every command turns a scenario into a [`Report`].

use clap::ValueEnum;
use gck_core::calculus::characteristic::characteristic_checks;
use gck_core::calculus::courant::{axioms_check, random_poly, random_section};
use gck_core::calculus::forms::apply_vector;
use gck_core::calculus::{family_verdict, FormField, RatFun, StandardCourantModel};
use gck_core::field::{i_unit, Field, C, Q};
use gck_core::gcs::{bivector_pairing, eigenbundles, pointwise_poisson, GCStructure};
use gck_core::induction::{
    hol_poisson_sigma_zero, induced_via_eigenbundles, induced_via_formulas, induced_via_quotient, involution_check,
    prop1_conditions, theorem_main_verdict, LinearSubmanifold,
};
use gck_core::kahler::{commute_decomposition, directness_check, induced_pair, lalg_conditions, metric_check};
use gck_core::matrix::unit_vec;
use gck_core::spinor::{gcs_of_spinor, is_pure, null_space, pullback_report, spinor_of_gcs, spinor_submanifold_check, transverse_test};
use gck_core::{Error, Matrix};
use rand::SeedableRng;
use serde_json::{json, Map, Value};

use crate::codec;
use crate::report::{point_label, Builder, Report};
use crate::scenario::{Instance, Kind, Scenario, ScenarioError, Submanifold};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Command {
    Validate,
    Split,
    Eigenbundles,
    Induce,
    Verdict,
    Involution,
    SigmaZero,
    Integrability,
    Jacobi,
    Axioms,
    Spinor,
    Mukai,
    PullbackSpinor,
    Kahler,
}

impl Command {
    pub fn name(self) -> String {
        self.to_possible_value().expect("no skipped variants").get_name().to_string()
    }
}

type Run<T> = Result<T, ScenarioError>;

/// Core errors raised while running a command on validated input.
fn input(path: &str) -> impl Fn(Error) -> ScenarioError + '_ {
    move |e| ScenarioError::InvariantViolation { path: path.into(), message: e.to_string() }
}

fn missing(path: &str, what: &str) -> ScenarioError {
    ScenarioError::Syntax { path: path.into(), message: format!("this command needs {what}") }
}

pub fn run(command: Command, sc: &Scenario, seed: u64) -> Run<Report> {
    let mut b = Builder::new(&command.name(), seed);
    b.data("n", json!(sc.n));
    if let Some(s) = &sc.structure {
        b.data("structure", json!(s.kind.name()));
    }
    match command {
        Command::Validate => validate(&mut b, sc)?,
        Command::Split => split(&mut b, sc)?,
        Command::Eigenbundles => per_instance(&mut b, sc, eigen)?,
        Command::Verdict => verdict(&mut b, sc)?,
        Command::Induce => per_instance(&mut b, sc, induce)?,
        Command::Involution => {
            let psi = sc.involution.clone().ok_or_else(|| missing("involution", "an involution matrix"))?;
            per_instance(&mut b, sc, |b, inst| involution(b, inst, &psi))?
        }
        Command::SigmaZero => per_instance(&mut b, sc, sigma_zero)?,
        Command::Integrability => integrability(&mut b, sc, seed)?,
        Command::Jacobi => jacobi(&mut b, sc)?,
        Command::Axioms => axioms(&mut b, sc, seed),
        Command::Spinor => per_instance(&mut b, sc, spinor)?,
        Command::Mukai => per_instance(&mut b, sc, mukai)?,
        Command::PullbackSpinor => per_instance(&mut b, sc, pullback_spinor)?,
        Command::Kahler => {
            if sc.second.is_none() {
                return Err(missing("second", "a second structure"));
            }
            per_instance(&mut b, sc, kahler)?
        }
    }
    Ok(b.finish())
}

/// Runs `f` on every instance. Pointwise scenarios put the data at the top
/// level; field scenarios collect one object per sample under `samples`.
fn per_instance(b: &mut Builder, sc: &Scenario, mut f: impl FnMut(&mut Builder, &Instance) -> Run<Map<String, Value>>) -> Run<()> {
    let instances = sc.instances()?;
    let mut samples = Vec::new();
    for inst in &instances {
        b.at(inst.at.as_deref());
        let mut data = f(b, inst)?;
        match &inst.at {
            None => {
                for (k, v) in data {
                    b.data(&k, v);
                }
            }
            Some(at) => {
                data.insert("at".into(), json!(point_label(Some(at))));
                samples.push(Value::Object(data));
            }
        }
    }
    b.at(None);
    if sc.kind == Kind::Field {
        b.data("samples", Value::Array(samples));
    }
    Ok(())
}

fn submanifold(inst: &Instance) -> Run<&LinearSubmanifold<Q>> {
    inst.w.as_ref().ok_or_else(|| missing("submanifold", "a submanifold"))
}

fn validate(b: &mut Builder, sc: &Scenario) -> Run<()> {
    let s = sc.structure()?;
    if sc.kind == Kind::Field {
        b.invariant("square_identities.symbolic", s.field.structure().split().square_identities().all_hold());
        b.data("J", codec::symbolic_matrix(s.field.matrix()));
        if sc.sample_points.is_empty() {
            return Ok(());
        }
    }
    per_instance(b, sc, |b, inst| {
        let mut d = Map::new();
        b.invariant("square_identities", inst.j.split().square_identities().all_hold());
        if let Some(j2) = &inst.second {
            b.invariant("second.square_identities", j2.split().square_identities().all_hold());
        }
        if inst.at.is_some() || sc.kind == Kind::Pointwise {
            d.insert("J".into(), codec::matrix(inst.j.matrix()));
        }
        Ok(d)
    })
}

fn split(b: &mut Builder, sc: &Scenario) -> Run<()> {
    let s = sc.structure()?;
    if sc.kind == Kind::Field {
        let sym = s.field.structure().split();
        b.data(
            "splitting.symbolic",
            json!({
                "phi": codec::symbolic_matrix(&sym.phi),
                "pi": codec::symbolic_matrix(&sym.pi_sharp),
                "sigma": codec::symbolic_matrix(&sym.sigma_flat),
            }),
        );
        b.invariant("square_identities.symbolic", sym.square_identities().all_hold());
        if sc.sample_points.is_empty() {
            return Ok(());
        }
    }
    per_instance(b, sc, |b, inst| {
        let s = inst.j.split();
        b.invariant("square_identities", s.square_identities().all_hold());
        b.invariant("reassembles", s.assemble_raw() == *inst.j.matrix());
        let mut d = Map::new();
        d.insert("splitting".into(), codec::splitting(&s));
        Ok(d)
    })
}

fn eigen(b: &mut Builder, inst: &Instance) -> Run<Map<String, Value>> {
    let j = &inst.j;
    let (lp, lm) = eigenbundles(j);
    let jc: Matrix<C> = j.matrix().lift();
    let i = i_unit();
    let eigen_ok = lp.space().basis_vectors().iter().all(|v| jc.mul_vec(v) == v.iter().map(|x| x.clone() * i.clone()).collect::<Vec<_>>());
    b.invariant("eigenvalue_plus_i", eigen_ok);
    b.invariant("maximal_isotropic", gck_core::dirac::is_maximal_isotropic(lp.space()) && gck_core::dirac::is_maximal_isotropic(lm.space()));
    b.invariant("transverse", lp.space().intersect(lm.space()).map_err(input("structure"))?.is_zero());
    b.invariant("conjugate", *lm.space() == lp.space().conj());
    let ch = characteristic_checks(j);
    b.invariant("characteristic_distribution", ch.distributions_agree);
    b.invariant("bialgebroid_bivector", ch.bivector_real && ch.bivector_matches_pi && ch.sum_is_twice_pi);
    let mut d = Map::new();
    d.insert("l_plus".into(), codec::subspace(lp.space()));
    d.insert("l_minus".into(), codec::subspace(lm.space()));
    d.insert("characteristic".into(), codec::subspace(&ch.image_pi));
    Ok(d)
}

fn verdict_checks(b: &mut Builder, inst: &Instance) -> Run<Map<String, Value>> {
    let w = submanifold(inst)?;
    let v = theorem_main_verdict(&inst.j, w).map_err(input("submanifold"))?;
    let p1 = prop1_conditions(&inst.j, w).map_err(input("submanifold"))?;
    let c = b.query("admissible", v.admissible);
    if let Some(x) = &v.failure_witness {
        c.witness(codec::gt_vector(x));
        c.detail(if v.poisson_dirac { "φ(TN) ⊄ TN + π♯(TN°)" } else { "TN ∩ π♯(TN°) ≠ 0" });
    }
    b.query("poisson_dirac", v.poisson_dirac);
    b.query("phi_range", v.phi_range);
    b.invariant("equivalent_conditions_agree", p1.agree() && p1.all() == v.admissible);
    let mut d = Map::new();
    d.insert("tangent".into(), codec::subspace(w.tangent()));
    if let Some(ind) = &v.induced {
        b.invariant("paths_agree", v.paths_agree == Some(true));
        d.insert("induced".into(), codec::matrix(ind.j_prime.matrix()));
    }
    Ok(d)
}

fn verdict(b: &mut Builder, sc: &Scenario) -> Run<()> {
    per_instance(b, sc, verdict_checks)?;
    if let (Kind::Field, Some(Submanifold::Embedding(h))) = (sc.kind, &sc.submanifold) {
        let fv = family_verdict(&sc.structure()?.field, h, &sc.sample_points, sc.twist.as_ref()).map_err(input("submanifold"))?;
        b.query("family.smooth", fv.smooth).detail(fv.reason.clone().unwrap_or_default());
        b.query("family.admissible", fv.admissible);
        b.query("family.constant_rank", fv.constant_rank);
        b.query("family.pole_free", fv.pole_free);
        if fv.pole_free {
            b.invariant("family.symbolic_specializes", fv.symbolic_matches);
        }
        if let Some(ok) = fv.induced_integrable {
            b.query("family.induced_integrable", ok);
        }
        let ranks: Vec<Value> = fv.samples.iter().map(|s| json!(s.rank)).collect();
        b.data("family.ranks", Value::Array(ranks));
        if let Some(ind) = &fv.symbolic.induced {
            b.data("family.induced", codec::symbolic_matrix(ind.j_prime.matrix()));
        }
    }
    Ok(())
}

fn induce(b: &mut Builder, inst: &Instance) -> Run<Map<String, Value>> {
    let w = submanifold(inst)?;
    let v = theorem_main_verdict(&inst.j, w).map_err(input("submanifold"))?;
    let c = b.query("admissible", v.admissible);
    let mut d = Map::new();
    if !v.admissible {
        if let Some(x) = &v.failure_witness {
            c.witness(codec::gt_vector(x));
        }
        return Ok(d);
    }
    let q = induced_via_quotient(&inst.j, w).map_err(input("submanifold"))?;
    let f = induced_via_formulas(&inst.j, w).map_err(input("submanifold"))?;
    let e = induced_via_eigenbundles(&inst.j, w).map_err(input("submanifold"))?;
    b.invariant("quotient_equals_formulas", q.j_prime == f.j_prime);
    b.invariant("eigenbundle_path_agrees", e.as_ref() == Some(&f.j_prime));
    b.invariant("induced_square_identities", f.j_prime.split().square_identities().all_hold());
    d.insert("induced".into(), codec::matrix(f.j_prime.matrix()));
    d.insert("splitting".into(), codec::splitting(&f.j_prime.split()));
    d.insert("witnesses".into(), Value::Array(f.witnesses.iter().map(codec::gt_vector).collect()));
    Ok(d)
}

fn involution(b: &mut Builder, inst: &Instance, psi: &Matrix<Q>) -> Run<Map<String, Value>> {
    let mut d = Map::new();
    match involution_check(psi, &inst.j) {
        Ok(rep) => {
            b.query("compatible", true);
            let c = b.invariant("fixed_locus_admissible", rep.verdict.admissible);
            if let Some(x) = &rep.verdict.failure_witness {
                c.witness(codec::gt_vector(x));
            }
            d.insert("fixed".into(), codec::subspace(rep.fixed.tangent()));
            if let Some(ind) = &rep.verdict.induced {
                d.insert("induced".into(), codec::matrix(ind.j_prime.matrix()));
            }
        }
        Err(Error::NotCompatible) => {
            b.query("compatible", false).detail("Ψ*_* does not commute with J");
        }
        Err(e) => return Err(input("involution")(e)),
    }
    Ok(d)
}

fn sigma_zero(b: &mut Builder, inst: &Instance) -> Run<Map<String, Value>> {
    let w = submanifold(inst)?;
    let mut d = Map::new();
    match hol_poisson_sigma_zero(&inst.j, w) {
        Ok(r) => {
            b.query("sigma_prime_zero", r.direct);
            b.invariant("criterion_agrees", r.criterion125 == r.direct);
            b.invariant("sum_form_agrees", r.criterion_sum == r.direct);
            let c = b.query("short_form_agrees", !r.discrepancy());
            if r.discrepancy() {
                c.detail("φ(TN) ⊆ π♯(A°) disagrees with the direct computation");
            }
            d.insert(
                "criteria".into(),
                json!({ "direct": r.direct, "criterion": r.criterion125, "sum_form": r.criterion_sum, "short_form": r.criterion123 }),
            );
        }
        Err(Error::NotHolomorphicPoisson) => {
            b.query("holomorphic_poisson", false).detail("σ block is not zero");
        }
        Err(Error::NotAdmissible(m)) => {
            b.query("admissible", false).detail(m);
        }
        Err(e) => return Err(input("submanifold")(e)),
    }
    Ok(d)
}

fn model(sc: &Scenario) -> StandardCourantModel {
    match &sc.twist {
        Some(h) => StandardCourantModel::new(h.clone()).expect("twist checked closed on load"),
        None => StandardCourantModel::untwisted(sc.n),
    }
}

fn rng(seed: u64) -> rand_chacha::ChaCha8Rng {
    rand_chacha::ChaCha8Rng::seed_from_u64(seed)
}

fn integrability(b: &mut Builder, sc: &Scenario, seed: u64) -> Run<()> {
    let field = &sc.structure()?.field;
    let model = model(sc);
    let rep = field.integrability(&model).map_err(input("structure"))?;
    let c = b.query("integrable", rep.integrable);
    if let Some((x, y, defect)) = &rep.counterexample {
        c.witness(json!({ "x": x, "y": y, "nijenhuis": defect.to_string() }));
    }
    let frame = field.frame();
    let mut rng = rng(seed);
    let f = random_poly(&mut rng, sc.n, 2);
    let tensorial = (0..frame.len())
        .flat_map(|i| (i + 1..frame.len()).map(move |k| (i, k)))
        .take(6)
        .all(|(i, k)| field.tensoriality_defect(&model, &frame[i], &frame[k], &f).is_zero());
    b.invariant("nijenhuis_tensorial", tensorial).detail(format!("f = {f}"));
    Ok(())
}

fn jacobi(b: &mut Builder, sc: &Scenario) -> Run<()> {
    let field = &sc.structure()?.field;
    let n = sc.n;
    let x: Vec<RatFun> = (0..n).map(RatFun::var).collect();
    let mut failure = None;
    'outer: for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                let v = field.jacobi_check(&x[i], &x[j], &x[k]);
                if !v.is_zero() {
                    failure = Some(json!({ "f": x[i].to_string(), "g": x[j].to_string(), "h": x[k].to_string(), "jacobiator": v.to_string() }));
                    break 'outer;
                }
            }
        }
    }
    let c = b.query("jacobi", failure.is_none());
    if let Some(w) = failure {
        c.witness(w);
    }
    let hamiltonian = (0..n).all(|i| {
        let xf = field.hamiltonian(&x[i]);
        (0..n).all(|j| apply_vector(&xf, &x[j]) == field.poisson_bracket(&x[i], &x[j]))
    });
    b.invariant("hamiltonian_vector_field", hamiltonian);
    let mut brackets = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            brackets.push(json!({ "f": x[i].to_string(), "g": x[j].to_string(), "bracket": field.poisson_bracket(&x[i], &x[j]).to_string() }));
        }
    }
    b.data("brackets", Value::Array(brackets));
    if sc.kind == Kind::Field && sc.sample_points.is_empty() {
        return Ok(());
    }
    let points: Vec<Vec<Q>> = match sc.kind {
        Kind::Pointwise => vec![vec![Q::zero(); n]],
        Kind::Field => sc.sample_points.clone(),
    };
    for (p, inst) in points.iter().zip(sc.instances()?) {
        b.at(inst.at.as_deref());
        let s = inst.j.split();
        let ok = (0..n).all(|i| {
            (0..n).all(|j| {
                let (ei, ej) = (unit_vec::<Q>(n, i), unit_vec::<Q>(n, j));
                let pw = pointwise_poisson(&inst.j, &ei, &ej);
                let sym = field.poisson_bracket(&x[i], &x[j]).eval(p);
                sym.as_ref() == Some(&pw) && bivector_pairing(&s, &ei, &ej) == pw
            })
        });
        b.invariant("bracket_matches_pi", ok);
    }
    b.at(None);
    Ok(())
}

fn axioms(b: &mut Builder, sc: &Scenario, seed: u64) {
    let model = model(sc);
    let n = sc.n;
    let mut rng = rng(seed);
    let mut residuals: Vec<(String, bool, String)> = Vec::new();
    for round in 0..3 {
        let sections = [random_section(&mut rng, n, 2), random_section(&mut rng, n, 2), random_section(&mut rng, n, 2)];
        let (f, g) = (random_poly(&mut rng, n, 2), random_poly(&mut rng, n, 2));
        let rep = axioms_check(&model, &sections, &f, &g);
        for (name, ok, residual) in rep.checks {
            if round == 0 {
                residuals.push((name.to_string(), ok, residual));
            } else if let Some(entry) = residuals.iter_mut().find(|e| e.0 == name) {
                if entry.1 && !ok {
                    *entry = (name.to_string(), ok, residual);
                }
            }
        }
    }
    for (name, ok, residual) in residuals {
        let c = b.invariant(&name, ok);
        if !ok {
            c.detail(format!("residual {residual}"));
        }
    }
    let twist = sc.twist.clone().unwrap_or_else(|| FormField::zero(n, 3));
    b.data("twist", codec::form(&twist));
}

fn spinor(b: &mut Builder, inst: &Instance) -> Run<Map<String, Value>> {
    let mu = spinor_of_gcs(&inst.j).map_err(input("n"))?;
    b.invariant("pure", is_pure(&mu).map_err(input("structure"))?);
    let (lp, _) = eigenbundles(&inst.j);
    b.invariant("null_space_is_l_plus", null_space(&mu).map_err(input("structure"))? == *lp.space());
    b.invariant("recovers_structure", gcs_of_spinor(&mu).map_err(input("structure"))? == inst.j);
    let kind = mu.terms().iter().map(|(idx, _)| idx.len()).min().unwrap_or(0);
    let mut d = Map::new();
    d.insert("spinor".into(), codec::spinor(&mu));
    d.insert("type".into(), json!(kind));
    Ok(d)
}

fn mukai(b: &mut Builder, inst: &Instance) -> Run<Map<String, Value>> {
    let mu = spinor_of_gcs(&inst.j).map_err(input("n"))?;
    let t = transverse_test(&mu).map_err(input("structure"))?;
    b.invariant("dual_paths_agree", t.agree());
    b.invariant("nondegenerate", t.by_pairing);
    let mut d = Map::new();
    use crate::codec::Scalar;
    d.insert("pairing".into(), t.pairing.encode());
    Ok(d)
}

fn pullback_spinor(b: &mut Builder, inst: &Instance) -> Run<Map<String, Value>> {
    let w = submanifold(inst)?;
    let h = w.frame().transpose();
    let mu = spinor_of_gcs(&inst.j).map_err(input("n"))?;
    let rep = spinor_submanifold_check(&h, &mu).map_err(input("submanifold"))?;
    b.query("pure_and_transverse", rep.holds);
    b.invariant("agrees_with_verdict", rep.agree());
    let pb = pullback_report(&h.lift(), &mu).map_err(input("submanifold"))?;
    if let Some(ok) = pb.coherent {
        b.invariant("pullback_coherent", ok);
    }
    let mut d = Map::new();
    d.insert(
        "literal_pullback".into(),
        json!({
            "nonzero": rep.literal_nonzero,
            "pure_and_transverse": rep.literal_holds(),
            "matches": rep.literal_matches,
            "spinor": pb.spinor.as_ref().map(codec::spinor),
        }),
    );
    d.insert("verdict_admissible".into(), json!(rep.verdict_admissible));
    Ok(d)
}

fn kahler(b: &mut Builder, inst: &Instance) -> Run<Map<String, Value>> {
    let (j1, j2) = (&inst.j, inst.second.as_ref().expect("checked by caller"));
    let mut d = Map::new();
    let cr = commute_decomposition(j1, j2).map_err(input("second"))?;
    b.invariant("commute_dual_paths_agree", cr.agree());
    b.query("commute", cr.by_commutator);
    d.insert("four_split_dims".into(), json!(cr.split.dims()));
    if !cr.by_commutator {
        return Ok(d);
    }
    let m = metric_check(j1, j2).map_err(input("second"))?;
    let c = b.query("positive_definite", m.positive_definite);
    if let Some((x, v)) = &m.witness {
        c.witness(json!({ "x": codec::vector(x), "value": codec::Scalar::encode(v) }));
    }
    d.insert("pivots".into(), codec::vector(&m.pivots));
    let Some(w) = &inst.w else { return Ok(d) };
    if !m.positive_definite {
        return Ok(d);
    }
    let l = lalg_conditions(j1, j2, w).map_err(input("submanifold"))?;
    let v = l.values();
    b.invariant("lalg_first_three_equivalent", v[0] == v[1] && v[1] == v[2] && l.sum_containment == v[2]);
    b.invariant("decomposition_implies_containments", !v[2] || v[3]);
    b.query("lalg_conditions", v[0]);
    d.insert(
        "lalg".into(),
        json!({ "span": v[0], "section_image": v[1], "b_decomposition": v[2], "containments": l.containments, "sum_containment": l.sum_containment }),
    );
    let adm = |j: &GCStructure<Q>| theorem_main_verdict(j, w).map(|v| v.admissible).map_err(input("submanifold"));
    let both = adm(j1)? && adm(j2)?;
    b.query("mutually_admissible", both);
    if both {
        let ind = induced_pair(j1, j2, w).map_err(input("submanifold"))?;
        b.query("induced_kahler", ind.is_kahler());
        if v[0] {
            b.invariant("induced_kahler_given_decomposition", ind.is_kahler());
            b.invariant("direct_decomposition", directness_check(j1, j2, w).map_err(input("submanifold"))?.holds());
        }
        d.insert("induced".into(), json!([codec::matrix(ind.first.j_prime.matrix()), codec::matrix(ind.second.j_prime.matrix())]));
    }
    Ok(d)
}
