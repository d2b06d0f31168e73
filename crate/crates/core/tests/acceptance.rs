//! Acceptance criteria: one PASS/FAIL line per criterion, all with zero tolerance.
//!
//! Run with `cargo test --test acceptance`.

use std::process::ExitCode;
use std::time::Instant;

use lck_core::exterior::{binomial, primitive_decompose, Bidegree, Form, HermitianFrame};
use lck_core::identities::{Op, CATALOG};
use lck_core::invariant::{
    catalog, catalog_model, identity_residual, FoliationData, HarmonicTable, InvariantComplex,
};
use lck_core::jet::{spanning_set, verify_identity, MetricChart, DEFAULT_SEED, DEFAULT_TRIALS};
use lck_core::linalg::{Matrix, Subspace};
use lck_core::verify::{verify, Context, Status};
use lck_core::Gq;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

struct Outcome {
    pass: bool,
    detail: String,
    /// Sub-checks that failed, by label.
    failed: Vec<String>,
}

impl Outcome {
    fn from_checks(checks: Vec<(String, bool)>, detail: impl Into<String>) -> Self {
        let failed: Vec<String> = checks.iter().filter(|c| !c.1).map(|c| c.0.clone()).collect();
        Outcome {
            pass: failed.is_empty(),
            detail: detail.into(),
            failed,
        }
    }
}

fn complex(name: &str) -> InvariantComplex {
    InvariantComplex::new(&catalog_model(name).unwrap()).unwrap()
}

fn is_zero(v: &[Gq]) -> bool {
    v.iter().all(Zero::is_zero)
}

fn identity_suite() -> Outcome {
    let mut checks = Vec::new();
    for m in catalog() {
        let cx = InvariantComplex::new(&m).unwrap();
        for id in CATALOG.iter() {
            checks.push((format!("{} on {}", id.id, m.name()), identity_residual(&cx, id).is_zero()));
        }
    }
    let mut forms = 0;
    for name in MetricChart::BUILTIN {
        let chart = MetricChart::builtin(name).unwrap();
        let ops = chart.operators().unwrap();
        forms = spanning_set(chart.frame(), chart.order()).len() + DEFAULT_TRIALS;
        for id in CATALOG.iter() {
            let r = verify_identity(&chart, &ops, id, DEFAULT_TRIALS, DEFAULT_SEED).unwrap();
            checks.push((format!("{} on chart {name}", id.id), r.is_zero()));
        }
    }
    let total = checks.len();
    Outcome::from_checks(
        checks,
        format!("{total} residuals exactly 0 (3 models x 20 as matrices, 3 charts x 20 over {forms} jet forms each)"),
    )
}

fn random_form(frame: &HermitianFrame, k: usize, rng: &mut ChaCha8Rng) -> Form {
    let alg = frame.algebra();
    let terms = alg.degree_range(k).filter_map(|i| {
        (rng.gen_range(0..3) > 0)
            .then(|| (alg.mask(i), Gq::complex(rng.gen_range(-3..=3), rng.gen_range(-3..=3))))
    });
    Form::from_terms(frame, terms)
}

fn sl2_structure() -> Outcome {
    let mut checks = Vec::new();
    for n in [2, 3] {
        let frame = HermitianFrame::new(n).unwrap();
        let data = frame.data();
        let h = data.algebra.degree_scaling(|k| Gq::from_int(k as i64 - n as i64));
        checks.push((
            format!("[L,Λ] = H for n = {n}"),
            data.lefschetz.commutator(&data.dual_lefschetz) == h,
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(DEFAULT_SEED);
    let (mut reassembled, mut primitive, mut tested) = (0, 0, 0);
    for i in 0..500 {
        let n = 2 + i % 2;
        let frame = HermitianFrame::new(n).unwrap();
        let k = rng.gen_range(0..=2 * n);
        let mut alpha = random_form(&frame, k, &mut rng);
        // every third low-degree form is forced primitive so both sides of the equivalence occur
        if i % 3 == 0 && k <= n {
            alpha = primitive_decompose(&alpha)
                .unwrap()
                .into_iter()
                .find(|c| c.power == 0)
                .map(|c| c.primitive)
                .unwrap_or(alpha);
        }
        let parts = primitive_decompose(&alpha).unwrap();
        let sum = parts.iter().fold(Form::zero(&frame), |acc, c| &acc + &c.expand());
        if sum == alpha {
            reassembled += 1;
        }
        if k <= n {
            tested += 1;
            let lam = alpha.lefschetz_lambda().is_zero();
            let lp = (0..=n - k).fold(alpha.clone(), |a, _| a.lefschetz_l()).is_zero();
            primitive += lam as usize;
            checks.push((format!("form {i}: Λα = 0 ⇔ L^(n−k+1)α = 0"), lam == lp));
        }
    }
    checks.push(("primitive decomposition reassembles".into(), reassembled == 500));
    Outcome::from_checks(
        checks,
        format!("[L,Λ] = H for n = 2, 3; {reassembled}/500 reassembled; equivalence on {tested} forms of degree ≤ n ({primitive} primitive)"),
    )
}

fn hopf_surface() -> Outcome {
    let cx = complex("hopf-surface");
    let t = HarmonicTable::compute(&cx);
    let boxes: Vec<usize> = (0..=4).map(|k| t.h_box_degree(k)).collect();
    let (s0, s1) = (t.s(0).unwrap_or(99), t.s(1).unwrap_or(99));
    Outcome::from_checks(
        vec![
            ("b = (1,1,0,1,1)".into(), t.betti_numbers() == [1, 1, 0, 1, 1]),
            ("h_□^k = 0 for all k".into(), boxes == [0; 5]),
            ("s0 = 1".into(), s0 == 1),
            ("s1 = 0".into(), s1 == 0),
            ("b2 = 2 s1".into(), t.b(2) == 2 * s1),
        ],
        format!("b = {:?}, h_□ = {boxes:?}, s0 = {s0}, s1 = {s1}, b2 = {} = 2*s1", t.betti_numbers(), t.b(2)),
    )
}

fn kodaira_surface() -> Outcome {
    let cx = complex("kodaira-surface");
    let t = HarmonicTable::compute(&cx);
    let f = FoliationData::new(&cx).unwrap();
    let s = f.transversal_spaces(&cx);
    let (t10, t01) = cx.theta_types();
    let (w10, w01) = (cx.wedge(&t10), cx.wedge(&t01));
    let mut decomposed = 0;
    let mut elements = 0;
    let mut checks = Vec::new();
    for p in 0..=2usize {
        let q = 2 - p;
        let s1 = if q >= 1 { s.space(p, q - 1, cx.dim()) } else { Subspace::zero(cx.dim()) };
        let s2 = if p >= 1 { s.space(p - 1, q, cx.dim()) } else { Subspace::zero(cx.dim()) };
        let span = s2.map(&w10).sum(&s1.map(&w01));
        for alpha in t.box_harmonic[&Bidegree::new(p, q)].basis() {
            elements += 1;
            decomposed += span.contains(alpha) as usize;
        }
    }
    let sum_b2 = t.h_box(2, 0) + t.h_box(1, 1) + t.h_box(0, 2);
    checks.push(("b = (1,3,4,3,1)".into(), t.betti_numbers() == [1, 3, 4, 3, 1]));
    checks.push(("s1 = 2".into(), s.s(1) == 2));
    checks.push(("s10 = s01 = 1".into(), s.s_pq(1, 0) == 1 && s.s_pq(0, 1) == 1));
    checks.push(("h_□^{1,0} = h_□^{0,1} = 1".into(), t.h_box(1, 0) == 1 && t.h_box(0, 1) == 1));
    checks.push(("h_□^{2,0} = h_□^{0,2} = 1".into(), t.h_box(2, 0) == 1 && t.h_box(0, 2) == 1));
    checks.push(("h_□^{1,1} = 2".into(), t.h_box(1, 1) == 2));
    checks.push(("Σ h_□^{p,2−p} = b2 = 4".into(), sum_b2 == 4 && t.b(2) == 4));
    checks.push(("θ^{1,0}∧β₁ + θ^{0,1}∧β₂ decomposition".into(), elements == 4 && decomposed == elements));
    Outcome::from_checks(
        checks,
        format!(
            "b = {:?}, s1 = {} ({},{}), h_□^(1,0),(0,1) = {},{}, h_□^(2,0),(1,1),(0,2) = {},{},{} sum {sum_b2}; {decomposed}/{elements} elements decompose",
            t.betti_numbers(),
            s.s(1),
            s.s_pq(1, 0),
            s.s_pq(0, 1),
            t.h_box(1, 0),
            t.h_box(0, 1),
            t.h_box(2, 0),
            t.h_box(1, 1),
            t.h_box(0, 2)
        ),
    )
}

fn vaisman_structure() -> Outcome {
    let mut checks = Vec::new();
    for name in ["hopf-surface", "kodaira-surface"] {
        let cx = complex(name);
        let alg = cx.algebra();
        let model = cx.model();
        let f = FoliationData::new(&cx).unwrap();
        let two_i = Gq::complex(0, 2);
        let (t10, t01) = cx.theta_types();
        let d_omega = cx.d().mul_vec(cx.omega());
        let split: Vec<Gq> = alg
            .wedge(f.theta(), f.j_theta())
            .iter()
            .zip(cx.d().mul_vec(f.j_theta()))
            .map(|(a, b)| a - &b)
            .collect();
        let omega_prime: Vec<Gq> = cx.d().mul_vec(f.j_theta()).iter().map(|x| -x).collect();
        let literal: Vec<Gq> = cx.get(Op::Del).mul_vec(&t01).iter().map(|x| x * &two_i).collect();
        let conjugate: Vec<Gq> = cx.get(Op::Dbar).mul_vec(&t10).iter().map(|x| x * &two_i).collect();
        checks.push((format!("{name}: ∇θ = 0 (Koszul)"), model.lee_form_parallel()));
        checks.push((format!("{name}: |θ| = 1"), model.theta_norm_sqr() == lck_core::scalar::rat(1, 1)));
        checks.push((format!("{name}: dω = θ∧ω"), d_omega == alg.wedge(f.theta(), cx.omega())));
        checks.push((format!("{name}: ω = θ∧Jθ − dJθ"), split == cx.omega()));
        checks.push((format!("{name}: ω′ = −dJθ = 2i∂θ^{{0,1}}"), omega_prime == literal));
        // reported alongside: the sign-consistent form of the same statement
        if omega_prime == conjugate && omega_prime != literal {
            checks.push((format!("{name}: (ω′ = 2i∂̄θ^{{1,0}} = −2i∂θ^{{0,1}} holds instead)"), true));
        }
    }
    let failed: Vec<&str> = checks.iter().filter(|c| !c.1).map(|c| c.0.as_str()).collect();
    let detail = if failed.is_empty() {
        "∇θ = 0, |θ| = 1, dω = θ∧ω, ω = θ∧Jθ − dJθ, ω′ = 2i∂θ^{0,1} on both models".to_string()
    } else {
        format!("∇θ = 0, |θ| = 1, dω = θ∧ω, ω = θ∧Jθ − dJθ hold on both models; failing: {}; −dJθ = 2i∂̄θ^{{1,0}} = −2i∂θ^{{0,1}} exactly", failed.join(", "))
    };
    Outcome::from_checks(checks, detail)
}

fn coords_bijective(source: &Subspace, map: &Matrix, target: &Subspace) -> bool {
    let image = source.map(map);
    source.dim() == target.dim() && image.dim() == source.dim() && target.contains_space(&image)
}

fn dualities() -> Outcome {
    let mut checks = Vec::new();
    let mut count = 0;
    for m in catalog() {
        let cx = InvariantComplex::new(&m).unwrap();
        let t = HarmonicTable::compute(&cx);
        let n = cx.n();
        let k = |p: usize, q: usize| &t.box_harmonic[&Bidegree::new(p, q)];
        checks.push((format!("{}: direct sum", m.name()), t.box_direct_sum_holds()));
        for p in 0..=n {
            for q in 0..=n {
                count += 1;
                let here = k(p, q);
                checks.push((format!("{} ({p},{q}) conjugation", m.name()), *here == k(q, p).conj()));
                checks.push((
                    format!("{} ({p},{q}) Hodge", m.name()),
                    coords_bijective(here, cx.star(), k(n - q, n - p)),
                ));
                checks.push((format!("{} ({p},{q}) Serre", m.name()), here.dim() == k(n - p, n - q).dim()));
                if p + q <= n {
                    let power = cx.get(Op::L).pow((n - p - q) as u32);
                    checks.push((
                        format!("{} ({p},{q}) Lefschetz", m.name()),
                        coords_bijective(here, &power, k(n - q, n - p)),
                    ));
                }
            }
        }
    }
    Outcome::from_checks(checks, format!("{count} bidegrees over 3 models: conjugation, ∗, Serre, L^(n−p−q), direct sum"))
}

fn morse_novikov() -> Outcome {
    let mut checks = Vec::new();
    for m in catalog() {
        let cx = InvariantComplex::new(&m).unwrap();
        let alg = cx.algebra();
        let (dt, _) = cx.morse_novikov();
        checks.push((format!("{}: d_θ² = 0", m.name()), dt.mul(&dt).is_zero()));
        let lhs = cx.star().mul(&cx.interior_dual(cx.theta()));
        let rhs = cx.wedge(cx.theta()).mul(cx.star());
        for k in 0..=alg.real_dim() {
            let p = alg.degree_projector(k);
            let sign = Gq::from_int(if k % 2 == 1 { 1 } else { -1 });
            checks.push((format!("{}: L1 degree {k}", m.name()), lhs.mul(&p) == rhs.mul(&p).scale(&sign)));
        }
        if !m.theta_is_zero() {
            let theta = cx.wedge(cx.theta());
            let stacked = cx.laplacian_d().vstack(&theta).vstack(&theta.mul(cx.star()));
            let s = Subspace::kernel(&stacked);
            checks.push((format!("{}: S^k(M,θ) = 0", m.name()), s.is_zero()));
        }
    }
    Outcome::from_checks(checks, "d_θ² = 0 on 3 models; ∗i_θ♯ = (−1)^(k−1) θ∧∗ in every degree; S^k(M,θ) = 0 on hopf and kodaira")
}

fn negative_control() -> Outcome {
    let cx = complex("torus4");
    let t = HarmonicTable::compute(&cx);
    let mut checks = vec![
        ("τ = 0".to_string(), cx.get(Op::Tau).is_zero() && cx.get(Op::TauBar).is_zero()),
        ("λ = 0".to_string(), cx.get(Op::Lam).is_zero() && cx.get(Op::LamBar).is_zero()),
        ("□ = Δ_d".to_string(), cx.box_operator() == cx.laplacian_d()),
    ];
    for k in 0..=4 {
        checks.push((format!("h_□^{k} = b^{k} = C(4,{k})"), t.h_box_degree(k) == binomial(4, k) && t.b(k) == binomial(4, k)));
    }
    let ctx = Context::new(cx.model()).unwrap();
    let lck_only = ["T3", "T4", "P4", "L2", "C3", "P2", "VAISMAN", "T6", "T7", "L4", "T10", "P3", "T8", "C1", "T9", "C4"];
    for id in lck_only {
        checks.push((format!("{id} not applicable"), verify(&ctx, id).unwrap().status == Status::NotApplicable));
    }
    let theta_kernel = cx.wedge(cx.theta());
    checks.push(("θ = 0".into(), is_zero(&theta_kernel.mul_vec(&cx.algebra().unit_vector(0)))));
    Outcome::from_checks(checks, format!("τ = λ = 0, □ = Δ_d, h_□ = b = (1,4,6,4,1), {} LCK-only checks not applicable", lck_only.len()))
}

/// Criteria that cannot hold as literally stated; each must fail exactly on the listed sub-checks.
const UNATTAINABLE: [(usize, &[&str]); 1] = [(
    5,
    &["hopf-surface: ω′ = −dJθ = 2i∂θ^{0,1}", "kodaira-surface: ω′ = −dJθ = 2i∂θ^{0,1}"],
)];

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 8] = [
        ("identity suite", identity_suite),
        ("sl(2) structure", sl2_structure),
        ("Hopf surface", hopf_surface),
        ("Kodaira surface", kodaira_surface),
        ("Vaisman structure", vaisman_structure),
        ("dualities of ker □", dualities),
        ("Morse–Novikov", morse_novikov),
        ("negative control", negative_control),
    ];
    let start = Instant::now();
    let mut unexpected = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let t0 = Instant::now();
        let o = run();
        let id = i + 1;
        println!(
            "{} criterion {id} [{name}] tolerance 0 (exact): {} ({:.2}s)",
            if o.pass { "PASS" } else { "FAIL" },
            o.detail,
            t0.elapsed().as_secs_f64()
        );
        if !o.pass {
            for f in &o.failed {
                println!("     failed: {f}");
            }
            let expected = UNATTAINABLE.iter().find(|(c, _)| *c == id);
            match expected {
                Some((_, subs)) if o.failed.iter().map(String::as_str).eq(subs.iter().copied()) => {
                    println!("     known: stated sign is inconsistent with the conventions the identity suite forces");
                }
                _ => unexpected += 1,
            }
        }
    }
    println!("acceptance finished in {:.2}s", start.elapsed().as_secs_f64());
    if unexpected == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{unexpected} criteria failed unexpectedly");
        ExitCode::FAILURE
    }
}
