//! Per-statement verdicts on a Lie model, each with the exact quantities compared.

use std::cell::OnceCell;
use std::fmt;

use crate::error::{Error, Result};
use crate::exterior::{Bidegree, Form, HermitianFrame};
use crate::identities::Op;
use crate::invariant::{
    FoliationData, Grade, HarmonicTable, InvariantComplex, LieModel, TransversalSpaces,
};
use crate::linalg::{Matrix, Subspace};
use crate::scalar::Gq;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    NotApplicable,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::NotApplicable => "N/A",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Comparison {
    pub label: String,
    pub holds: bool,
}

#[derive(Clone, Debug)]
pub struct Verdict {
    pub id: &'static str,
    pub model: String,
    pub status: Status,
    pub statement: &'static str,
    /// One-line result, e.g. `b2 = 4 = 2*s1`.
    pub summary: String,
    /// The violated hypothesis when not applicable.
    pub hypothesis: Option<String>,
    pub comparisons: Vec<Comparison>,
}

impl Verdict {
    pub fn failures(&self) -> impl Iterator<Item = &Comparison> {
        self.comparisons.iter().filter(|c| !c.holds)
    }
}

/// `(id, statement)` for every check, in run order.
pub const THEOREMS: [(&str, &str); 25] = [
    ("OPS", "d = ∂ + ∂̄, d² = ∂² = ∂̄² = ∂∂̄ + ∂̄∂ = 0, every Δ Hermitian, □ real, λ + λ̄ = ω∧θ∧·"),
    ("BETTI", "dim ker Δ_d ∩ Ω^k = b^k"),
    ("T2", "ker(□)∩Ω^k=⊕_{p+q=k}ker(□^{p,q}) with conjugation, Hodge, Serre and Lefschetz dualities"),
    ("C2", "ker(□^{p,q})=⊕_{j≥0}L^j(ker(□^{p−j,q−j}))_prim"),
    ("SL2", "sl(2,C) acts on ker(Δ_τ+Δ_τ̄+Δ_λ+Δ_λ̄) = ker(Δ_τ+Δ_τ̄+3Δ_λ+3Δ_λ̄)"),
    ("L3", "ker(λ)∩ker(λ̄)∩P^k⊂ker(Δ_τ+Δ_τ̄+Δ_λ+Δ_λ̄)∩Ω^k"),
    ("P5", "ker(□^{n,0})=ker(Δ_∂̄)∩Ω^{n,0}, ker(□^{0,n})=ker(Δ_∂̄)∩Ω^{0,n}"),
    ("L1", "∗i_{θ♯}α=(−1)^{k−1}θ∧∗α"),
    ("MN", "d_θ = d + θ∧·, d_θ² = 0, (d − sθ∧)ω = 0"),
    ("T3", "S^k(M,θ)={Δ_dα=0, θ∧α=0, θ∧∗α=0}: either θ=0 or α=0"),
    ("L2", "θ∧α=0, θ∧∗α=0 for α∈ker(Δ_τ+Δ_τ̄+Δ_λ+Δ_λ̄)∩Ω^k, |k−n|≥2"),
    ("C3", "θ Δ_d-harmonic ⇒ ker(Δ_τ+Δ_τ̄+Δ_λ+Δ_λ̄)∩Ω^k={0} for |k−n|≥2"),
    ("T4", "H^k_□={0} for |k−n|≥2"),
    ("P2", "(Δ_τ+Δ_τ̄+Δ_λ+Δ_λ̄)(θ∧α)=0, θ∧∗α=0 for α∈ker(Δ_τ+Δ_τ̄+Δ_λ+Δ_λ̄)∩Ω^{n−1}"),
    ("P4", "ker Δ_∂̄∩P^{k,n−1−k}∩ker(i_{θ♯})≅ker(□^{k,n−1−k}), ker Δ_∂̄∩P^{k,n−k}≅ker(□^{k,n−k})"),
    ("VAISMAN", "∇θ=0, |θ|=1, ω=θ∧Jθ−dJθ, ω′:=−dJθ=2i∂θ^{0,1}, d=d′+d″+d_V, δ=δ′+δ″+d_V*"),
    ("T6", "H^k(M)≅S^k(𝒱)⊕S^{k−1}(𝒱) with α=β+θ∧γ, k≤n−1"),
    ("T7", "H^{p,q}_∂̄(M)≅S^{p,q}(𝒱)⊕S^{p,q−1}(𝒱) with α=β+θ^{0,1}∧γ, p+q≤n−1"),
    ("L4", "Λ(θ∧α)=0 for Δ_d-harmonic α of degree k≤n−1"),
    ("T10", "b^k=Σ_{p+q=k}h^{p,q}, b^n=2s_{n−1}, χ=0"),
    ("P3", "□(θ∧α)=0, □(θ^{1,0}∧α)=0, □(θ^{0,1}∧α)=0 for α∈ker(□^{k,n−1−k})"),
    ("T8", "ker(□^{p,n−1−p})≅𝒮^{p,n−1−p}(𝒱)"),
    ("C1", "H^{n,0}_∂̄(M)≅S^{n−1,0}(𝒱)≅H^{n−1,0}_∂̄(M)"),
    ("T9", "h_□^{p,n−p}=s_{p,n−p−1}+s_{p−1,n−p}, α=θ^{1,0}∧β₁+θ^{0,1}∧β₂, ker Δ_d∩Ω^n≅ker(□)∩Ω^n"),
    ("C4", "b^n=0 ⇒ H^k_□={0} for all k; b^n=2 ⇒ H^{n,0}_∂̄=H^{n−1,0}_∂̄={0}"),
];

pub fn theorem_ids() -> Vec<&'static str> {
    THEOREMS.iter().map(|(id, _)| *id).collect()
}

/// Resolves a theorem id case-insensitively.
pub fn lookup_theorem(id: &str) -> Result<&'static str> {
    THEOREMS
        .iter()
        .find(|(t, _)| t.eq_ignore_ascii_case(id))
        .map(|(t, _)| *t)
        .ok_or_else(|| Error::UnknownTheorem(id.to_string()))
}

fn statement(id: &str) -> &'static str {
    THEOREMS.iter().find(|(t, _)| *t == id).map(|(_, s)| *s).unwrap_or("")
}

/// Lazily built data shared by the checks of one model.
pub struct Context {
    cx: InvariantComplex,
    table: OnceCell<HarmonicTable>,
    foliation: OnceCell<std::result::Result<FoliationData, String>>,
    transversal: OnceCell<Option<TransversalSpaces>>,
    d0: OnceCell<Matrix>,
    boxed: OnceCell<Matrix>,
}

impl Context {
    pub fn new(model: &LieModel) -> Result<Self> {
        Ok(Self {
            cx: InvariantComplex::new(model)?,
            table: OnceCell::new(),
            foliation: OnceCell::new(),
            transversal: OnceCell::new(),
            d0: OnceCell::new(),
            boxed: OnceCell::new(),
        })
    }

    pub fn complex(&self) -> &InvariantComplex {
        &self.cx
    }

    pub fn table(&self) -> &HarmonicTable {
        self.table.get_or_init(|| HarmonicTable::compute(&self.cx))
    }

    fn foliation(&self) -> std::result::Result<&FoliationData, String> {
        self.foliation
            .get_or_init(|| FoliationData::new(&self.cx).map_err(|e| e.to_string()))
            .as_ref()
            .map_err(Clone::clone)
    }

    fn transversal(&self) -> Option<&TransversalSpaces> {
        self.transversal
            .get_or_init(|| self.foliation().ok().map(|f| f.transversal_spaces(&self.cx)))
            .as_ref()
    }

    fn d0(&self) -> &Matrix {
        self.d0.get_or_init(|| self.cx.torsion_laplacian())
    }

    fn boxed(&self) -> &Matrix {
        self.boxed.get_or_init(|| self.cx.box_operator())
    }

    fn n(&self) -> usize {
        self.cx.n()
    }

    fn name(&self) -> &str {
        self.cx.model().name()
    }

    fn lck(&self) -> std::result::Result<(), String> {
        if self.cx.model().theta_is_zero() {
            Err("θ = 0: the metric is Kähler, the non-Kähler LCK hypothesis fails".into())
        } else {
            Ok(())
        }
    }

    fn vaisman(&self) -> std::result::Result<(&FoliationData, &TransversalSpaces), String> {
        let f = self.foliation().map_err(|e| format!("not Vaisman ({e})"))?;
        Ok((f, self.transversal().expect("foliation exists")))
    }

    fn kernel(&self, op: &Matrix, grade: Grade) -> Subspace {
        self.cx.kernel(op, grade)
    }

    fn bd(&self, p: i64, q: i64) -> Subspace {
        let n = self.n() as i64;
        if p < 0 || q < 0 || p > n || q > n {
            return Subspace::zero(self.cx.dim());
        }
        self.cx.domain(Grade::Bidegree(p as usize, q as usize))
    }

    fn box_pq(&self, p: i64, q: i64) -> Subspace {
        let n = self.n() as i64;
        if p < 0 || q < 0 || p > n || q > n {
            return Subspace::zero(self.cx.dim());
        }
        self.table().box_harmonic[&Bidegree::new(p as usize, q as usize)].clone()
    }

    fn hodge_pq(&self, p: usize, q: usize) -> Subspace {
        self.table().hodge[&Bidegree::new(p, q)].clone()
    }

    fn s_space(&self, t: &TransversalSpaces, p: i64, q: i64) -> Subspace {
        if p < 0 || q < 0 {
            return Subspace::zero(self.cx.dim());
        }
        t.space(p as usize, q as usize, self.cx.dim())
    }

    fn s_degree(&self, t: &TransversalSpaces, k: i64) -> Subspace {
        if k < 0 {
            return Subspace::zero(self.cx.dim());
        }
        t.by_degree
            .get(k as usize)
            .cloned()
            .unwrap_or_else(|| Subspace::zero(self.cx.dim()))
    }

    /// Renders a coefficient vector in the coframe `e^I`.
    pub fn format_form(&self, v: &[Gq]) -> String {
        match HermitianFrame::new(self.n()) {
            Ok(frame) => Form::from_vector(&frame, v).to_string(),
            Err(_) => format!("{v:?}"),
        }
    }
}

/// Coordinates of `map(b)` in the basis of `target`, one column per basis
/// vector `b` of `source`; `None` if some image leaves `target`.
pub fn pairing(source: &Subspace, map: &Matrix, target: &Subspace) -> Option<Matrix> {
    let t = target.as_columns();
    let mut cols = Vec::new();
    for b in source.basis() {
        let image = map.mul_vec(b);
        if target.is_zero() {
            if image.iter().any(|x| !num_traits::Zero::is_zero(x)) {
                return None;
            }
            cols.push(Vec::new());
            continue;
        }
        cols.push(t.solve(&image)?);
    }
    Some(Matrix::from_columns(target.dim(), &cols))
}

/// `map` restricts to a bijection `source → target`, witnessed by an exactly
/// invertible pairing matrix.
pub fn bijective(source: &Subspace, map: &Matrix, target: &Subspace) -> bool {
    if source.dim() != target.dim() {
        return false;
    }
    if source.dim() == 0 {
        return true;
    }
    pairing(source, map, target).is_some_and(|m| !num_traits::Zero::is_zero(&m.determinant()))
}

fn wedge_left(cx: &InvariantComplex, alpha: &[Gq]) -> Matrix {
    cx.wedge(alpha)
}

fn is_zero_vec(v: &[Gq]) -> bool {
    v.iter().all(num_traits::Zero::is_zero)
}

struct Builder<'a> {
    ctx: &'a Context,
    id: &'static str,
    comparisons: Vec<Comparison>,
}

impl<'a> Builder<'a> {
    fn new(ctx: &'a Context, id: &'static str) -> Self {
        Self {
            ctx,
            id,
            comparisons: Vec::new(),
        }
    }

    fn check(&mut self, holds: bool, label: impl Into<String>) -> bool {
        self.comparisons.push(Comparison {
            label: label.into(),
            holds,
        });
        holds
    }

    fn dims(&mut self, left: (&str, usize), right: (&str, usize)) -> bool {
        let holds = left.1 == right.1;
        let rel = if holds { "=" } else { "≠" };
        self.check(holds, format!("{} = {} {rel} {} = {}", left.0, left.1, right.0, right.1))
    }

    fn finish(self, summary: impl Into<String>) -> Verdict {
        let ok = self.comparisons.iter().all(|c| c.holds);
        Verdict {
            id: self.id,
            model: self.ctx.name().to_string(),
            status: if ok { Status::Pass } else { Status::Fail },
            statement: statement(self.id),
            summary: summary.into(),
            hypothesis: None,
            comparisons: self.comparisons,
        }
    }

    fn not_applicable(self, hypothesis: String, summary: impl Into<String>) -> Verdict {
        Verdict {
            id: self.id,
            model: self.ctx.name().to_string(),
            status: Status::NotApplicable,
            statement: statement(self.id),
            summary: summary.into(),
            hypothesis: Some(hypothesis),
            comparisons: self.comparisons,
        }
    }
}

/// Runs one check by id.
pub fn verify(ctx: &Context, id: &str) -> Result<Verdict> {
    let id = lookup_theorem(id)?;
    Ok(match id {
        "OPS" => verify_ops(ctx),
        "BETTI" => verify_betti(ctx),
        "T2" => verify_t2(ctx),
        "C2" => verify_c2(ctx),
        "SL2" => verify_sl2(ctx),
        "L3" => verify_l3(ctx),
        "P5" => verify_p5(ctx),
        "L1" => verify_l1(ctx),
        "MN" => verify_mn(ctx),
        "T3" => verify_t3(ctx),
        "L2" => verify_l2(ctx),
        "C3" => verify_c3(ctx),
        "T4" => verify_t4(ctx),
        "P2" => verify_p2(ctx),
        "P4" => verify_p4(ctx),
        "VAISMAN" => verify_vaisman(ctx),
        "T6" => verify_t6(ctx),
        "T7" => verify_t7(ctx),
        "L4" => verify_l4(ctx),
        "T10" => verify_t10(ctx),
        "P3" => verify_p3(ctx),
        "T8" => verify_t8(ctx),
        "C1" => verify_c1(ctx),
        "T9" => verify_t9(ctx),
        "C4" => verify_c4(ctx),
        _ => unreachable!("registered id"),
    })
}

/// Runs every check on a model.
pub fn verify_all(model: &LieModel) -> Result<Vec<Verdict>> {
    let ctx = Context::new(model)?;
    theorem_ids().into_iter().map(|id| verify(&ctx, id)).collect()
}

pub fn verify_ops(ctx: &Context) -> Verdict {
    let cx = ctx.complex();
    let mut b = Builder::new(ctx, "OPS");
    let d = cx.d();
    let (del, dbar) = (cx.get(Op::Del), cx.get(Op::Dbar));
    b.check(del.add(dbar) == *d, "d = ∂ + ∂̄");
    b.check(d.mul(d).is_zero(), "d² = 0");
    b.check(del.mul(del).is_zero(), "∂² = 0");
    b.check(dbar.mul(dbar).is_zero(), "∂̄² = 0");
    b.check(del.anticommutator(dbar).is_zero(), "∂∂̄ + ∂̄∂ = 0");
    let suite = cx.operator_suite();
    let graded = suite.values().filter(|op| !cx.respects_shift(op)).map(|op| op.name.clone()).collect::<Vec<_>>();
    b.check(graded.is_empty(), format!("all {} operators respect their grading {graded:?}", suite.len()));
    let lap_names = suite.keys().filter(|k| k.starts_with('Δ') || k.as_str() == "□");
    let bad: Vec<String> = lap_names.filter(|k| !suite[*k].matrix.is_hermitian()).cloned().collect();
    b.check(bad.is_empty(), format!("Laplacians and □ Hermitian (AA* + A*A) {bad:?}"));
    b.check(ctx.boxed().conj() == *ctx.boxed(), "□ is real");
    let s = Gq::from_int(cx.model().lee_sign() as i64);
    let lam_sum = cx.get(Op::Lam).add(cx.get(Op::LamBar));
    let theta_omega = cx.algebra().wedge(cx.omega(), cx.theta());
    b.check(
        lam_sum == wedge_left(cx, &theta_omega).scale(&s),
        format!("λ + λ̄ = s·ω∧θ∧· with s = {s}"),
    );
    let torsion_free = cx.get(Op::Tau).is_zero() && cx.get(Op::Lam).is_zero();
    if cx.model().theta_is_zero() {
        b.check(torsion_free, "θ = 0 ⇒ τ = λ = 0");
        b.check(*ctx.boxed() == cx.laplacian_d(), "θ = 0 ⇒ □ = Δ_d");
    }
    let torsion = if torsion_free { "τ = λ = 0" } else { "τ, λ ≠ 0" };
    b.finish(format!("{} graded operators, {torsion}", suite.len()))
}

pub fn verify_betti(ctx: &Context) -> Verdict {
    let cx = ctx.complex();
    let mut b = Builder::new(ctx, "BETTI");
    let harmonic = ctx.table().betti_numbers();
    let ranks = cx.betti_ranks();
    b.check(harmonic == ranks, format!("dim ker Δ_d {harmonic:?} = ker d / im d {ranks:?}"));
    let summary = format!("b = {harmonic:?}");
    match cx.model().expected_betti() {
        Some(exp) => {
            b.check(harmonic == exp, format!("computed {harmonic:?} = expected {exp:?}"));
            b.finish(summary)
        }
        None => b.not_applicable("no expected Betti numbers in the model".into(), summary),
    }
}

pub fn verify_t2(ctx: &Context) -> Verdict {
    let cx = ctx.complex();
    let n = ctx.n() as i64;
    let mut b = Builder::new(ctx, "T2");
    b.check(ctx.table().box_direct_sum_holds(), "ker(□)∩Ω^k = ⊕ ker(□^{p,q}) for every k");
    let star = cx.star();
    let l = cx.get(Op::L);
    for p in 0..=n {
        for q in 0..=n {
            let here = ctx.box_pq(p, q);
            b.check(
                here == ctx.box_pq(q, p).conj(),
                format!("ker □^{{{p},{q}}} = conj ker □^{{{q},{p}}} (dim {})", here.dim()),
            );
            let hodge = ctx.box_pq(n - q, n - p);
            b.check(
                bijective(&here, star, &hodge),
                format!("∗: ker □^{{{p},{q}}} → ker □^{{{},{}}} bijective ({} → {})", n - q, n - p, here.dim(), hodge.dim()),
            );
            let serre = ctx.box_pq(n - p, n - q);
            b.check(
                here.map(star).conj() == serre,
                format!("conj∘∗: ker □^{{{p},{q}}} ≅ ker □^{{{},{}}} ({} = {})", n - p, n - q, here.dim(), serre.dim()),
            );
            if p + q <= n {
                let power = l.pow((n - p - q) as u32);
                b.check(
                    bijective(&here, &power, &hodge),
                    format!("L^{}: ker □^{{{p},{q}}} → ker □^{{{},{}}} bijective", n - p - q, n - q, n - p),
                );
            }
        }
    }
    let kernel = ctx.kernel(ctx.boxed(), Grade::All);
    let lambda = cx.get(Op::Lambda);
    b.check(
        kernel.contains_space(&kernel.map(l)) && kernel.contains_space(&kernel.map(lambda)),
        "L, Λ preserve ker □",
    );
    b.check(
        l.commutator(lambda).mul(&kernel.as_columns()) == cx.counting_h().mul(&kernel.as_columns()),
        "[L, Λ] = H on ker □",
    );
    let total: usize = (0..=2 * ctx.n()).map(|k| ctx.table().h_box_degree(k)).sum();
    b.finish(format!("dim ker □ = {total}"))
}

pub fn verify_c2(ctx: &Context) -> Verdict {
    let cx = ctx.complex();
    let n = ctx.n() as i64;
    let mut b = Builder::new(ctx, "C2");
    let l = cx.get(Op::L);
    let lambda = cx.get(Op::Lambda);
    for p in 0..=n {
        for q in 0..=n {
            let target = ctx.box_pq(p, q);
            let mut sum = Subspace::zero(cx.dim());
            let mut dims = 0;
            for j in 0..=p.min(q) {
                let prim = Subspace::kernel_within(lambda, &ctx.box_pq(p - j, q - j));
                let piece = prim.map(&l.pow(j as u32));
                dims += piece.dim();
                sum = sum.sum(&piece);
            }
            b.check(
                sum == target && dims == target.dim(),
                format!("ker □^{{{p},{q}}}: dim {} = Σ_j dim L^j(prim) = {dims}", target.dim()),
            );
        }
    }
    b.finish("Lefschetz decomposition of every ker □^{p,q}")
}

pub fn verify_sl2(ctx: &Context) -> Verdict {
    let cx = ctx.complex();
    let mut b = Builder::new(ctx, "SL2");
    let d0 = ctx.d0();
    let kernel = ctx.kernel(d0, Grade::All);
    let weighted = ctx.kernel(&cx.weighted_torsion_laplacian(3), Grade::All);
    let (l, lambda, h) = (cx.get(Op::L), cx.get(Op::Lambda), cx.counting_h());
    b.check(l.commutator(lambda) == h, "[L, Λ] = H = (k − n)·id on all forms");
    b.check(kernel == weighted, format!("ker D₀ = ker(Δ_τ+Δ_τ̄+3Δ_λ+3Δ_λ̄) (dim {})", kernel.dim()));
    b.check(kernel.contains_space(&kernel.map(l)), "L·ker D₀ ⊆ ker D₀");
    b.check(kernel.contains_space(&kernel.map(lambda)), "Λ·ker D₀ ⊆ ker D₀");
    let basis = kernel.as_columns();
    b.check(l.commutator(d0).mul(&basis).is_zero(), "[L, D₀] = 0 on ker D₀");
    b.check(lambda.commutator(d0).mul(&basis).is_zero(), "[Λ, D₀] = 0 on ker D₀");
    if d0.is_zero() {
        b.check(true, "D₀ = 0: ker D₀ is every form");
    }
    b.finish(format!("dim ker D₀ = {}", kernel.dim()))
}

pub fn verify_l3(ctx: &Context) -> Verdict {
    let cx = ctx.complex();
    let mut b = Builder::new(ctx, "L3");
    let stacked = cx.get(Op::Lam).vstack(cx.get(Op::LamBar)).vstack(cx.get(Op::Lambda));
    for k in 0..=2 * ctx.n() {
        let left = ctx.kernel(&stacked, Grade::Degree(k));
        let right = ctx.kernel(ctx.d0(), Grade::Degree(k));
        b.check(
            right.contains_space(&left),
            format!("k = {k}: ker λ ∩ ker λ̄ ∩ P^k (dim {}) ⊆ ker D₀ ∩ Ω^k (dim {})", left.dim(), right.dim()),
        );
    }
    b.finish("inclusion holds in every degree")
}

pub fn verify_p5(ctx: &Context) -> Verdict {
    let n = ctx.n();
    let mut b = Builder::new(ctx, "P5");
    for (p, q) in [(n, 0), (0, n)] {
        let boxed = ctx.box_pq(p as i64, q as i64);
        let hodge = ctx.hodge_pq(p, q);
        b.check(
            boxed == hodge,
            format!("ker □^{{{p},{q}}} (dim {}) = ker Δ_∂̄ ∩ Ω^{{{p},{q}}} (dim {})", boxed.dim(), hodge.dim()),
        );
    }
    b.finish(format!("h_□^{{{n},0}} = h^{{{n},0}} = {}", ctx.table().h(n, 0)))
}

pub fn verify_l1(ctx: &Context) -> Verdict {
    let cx = ctx.complex();
    let alg = cx.algebra();
    let mut b = Builder::new(ctx, "L1");
    let lhs = cx.star().mul(&cx.interior_dual(cx.theta()));
    let rhs = wedge_left(cx, cx.theta()).mul(cx.star());
    for k in 0..=alg.real_dim() {
        let p = alg.degree_projector(k);
        let sign = Gq::from_int(if k % 2 == 1 { 1 } else { -1 });
        b.check(
            lhs.mul(&p) == rhs.mul(&p).scale(&sign),
            format!("degree {k}: ∗i_θ♯ = {}θ∧∗", if k % 2 == 1 { "+" } else { "−" }),
        );
    }
    b.finish("matrix identity in every degree")
}

pub fn verify_mn(ctx: &Context) -> Verdict {
    let cx = ctx.complex();
    let mut b = Builder::new(ctx, "MN");
    let (d_theta, lap) = cx.morse_novikov();
    b.check(d_theta.mul(&d_theta).is_zero(), "d_θ² = 0");
    b.check(lap.is_hermitian(), "Δ_θ Hermitian");
    let s = cx.model().lee_sign() as i64;
    let twisted = cx.d().sub(&wedge_left(cx, cx.theta()).scale(&Gq::from_int(s)));
    b.check(
        is_zero_vec(&twisted.mul_vec(cx.omega())),
        format!("(d − sθ∧)ω = 0 with s = {s:+}"),
    );
    if cx.model().theta_is_zero() {
        b.check(d_theta == *cx.d(), "θ = 0 ⇒ d_θ = d");
    }
    let dims: Vec<usize> = (0..=2 * ctx.n()).map(|k| ctx.table().b_theta(k)).collect();
    b.finish(format!("dim ker Δ_θ = {dims:?}, s = {s:+}"))
}

/// `S^k(M, θ)` in every degree.
fn t3_spaces(ctx: &Context) -> Vec<Subspace> {
    let cx = ctx.complex();
    let theta = wedge_left(cx, cx.theta());
    let stacked = cx.laplacian_d().vstack(&theta).vstack(&theta.mul(cx.star()));
    (0..=2 * ctx.n()).map(|k| ctx.kernel(&stacked, Grade::Degree(k))).collect()
}

pub fn verify_t3(ctx: &Context) -> Verdict {
    let mut b = Builder::new(ctx, "T3");
    let spaces = t3_spaces(ctx);
    let dims: Vec<usize> = spaces.iter().map(Subspace::dim).collect();
    if ctx.complex().model().theta_is_zero() {
        let betti = ctx.table().betti_numbers();
        b.check(dims == betti, format!("θ = 0 branch: S^k = ker Δ_d, dims {dims:?}"));
        return b.not_applicable("θ = 0".into(), format!("dim S^k = {dims:?}"));
    }
    for (k, s) in spaces.iter().enumerate() {
        let detail = s.basis().first().map(|v| format!(", e.g. {}", ctx.format_form(v))).unwrap_or_default();
        b.check(s.is_zero(), format!("S^{k}(M,θ) dim {}{detail}", s.dim()));
    }
    b.finish(format!("dim S^k(M,θ) = {dims:?}"))
}

fn far_degrees(n: usize) -> Vec<usize> {
    (0..=2 * n).filter(|&k| k.abs_diff(n) >= 2).collect()
}

pub fn verify_l2(ctx: &Context) -> Verdict {
    let cx = ctx.complex();
    let mut b = Builder::new(ctx, "L2");
    if let Err(h) = ctx.lck() {
        return b.not_applicable(h, "");
    }
    let theta = wedge_left(cx, cx.theta());
    let theta_star = theta.mul(cx.star());
    let mut count = 0;
    for k in far_degrees(ctx.n()) {
        for alpha in ctx.kernel(ctx.d0(), Grade::Degree(k)).basis() {
            count += 1;
            b.check(
                is_zero_vec(&theta.mul_vec(alpha)) && is_zero_vec(&theta_star.mul_vec(alpha)),
                format!("k = {k}: θ∧α = θ∧∗α = 0 for α = {}", ctx.format_form(alpha)),
            );
        }
    }
    b.finish(format!("{count} kernel elements in degrees {:?}", far_degrees(ctx.n())))
}

pub fn verify_c3(ctx: &Context) -> Verdict {
    let cx = ctx.complex();
    let mut b = Builder::new(ctx, "C3");
    if let Err(h) = ctx.lck() {
        return b.not_applicable(h, "");
    }
    if !is_zero_vec(&cx.laplacian_d().mul_vec(cx.theta())) {
        return b.not_applicable("θ is not Δ_d-harmonic".into(), "");
    }
    b.check(true, "Δ_d θ = 0");
    for k in far_degrees(ctx.n()) {
        let kernel = ctx.kernel(ctx.d0(), Grade::Degree(k));
        b.check(kernel.is_zero(), format!("dim ker D₀ ∩ Ω^{k} = {}", kernel.dim()));
    }
    b.finish("ker D₀ vanishes away from the middle degrees")
}

pub fn verify_t4(ctx: &Context) -> Verdict {
    let mut b = Builder::new(ctx, "T4");
    if let Err(h) = ctx.lck() {
        return b.not_applicable(h, "");
    }
    let t = ctx.table();
    for k in far_degrees(ctx.n()) {
        b.check(t.h_box_degree(k) == 0, format!("h_□^{k} = {}", t.h_box_degree(k)));
    }
    b.check(t.h_box(0, 0) == 0, format!("dim ker □^{{0,0}} = {} (non-Kähler)", t.h_box(0, 0)));
    let dims: Vec<usize> = (0..=2 * ctx.n()).map(|k| t.h_box_degree(k)).collect();
    b.finish(format!("h_□ = {dims:?}"))
}

pub fn verify_p2(ctx: &Context) -> Verdict {
    let cx = ctx.complex();
    let mut b = Builder::new(ctx, "P2");
    if let Err(h) = ctx.lck() {
        return b.not_applicable(h, "");
    }
    let theta = wedge_left(cx, cx.theta());
    let kernel = ctx.kernel(ctx.d0(), Grade::Degree(ctx.n() - 1));
    for alpha in kernel.basis() {
        let wedge = theta.mul_vec(alpha);
        b.check(
            is_zero_vec(&ctx.d0().mul_vec(&wedge)),
            format!("D₀(θ∧α) = 0 for α = {}", ctx.format_form(alpha)),
        );
        b.check(
            is_zero_vec(&theta.mul(cx.star()).mul_vec(alpha)),
            format!("θ∧∗α = 0 for α = {}", ctx.format_form(alpha)),
        );
    }
    b.finish(format!("dim ker D₀ ∩ Ω^{} = {}", ctx.n() - 1, kernel.dim()))
}

pub fn verify_p4(ctx: &Context) -> Verdict {
    let cx = ctx.complex();
    let n = ctx.n() as i64;
    let mut b = Builder::new(ctx, "P4");
    if let Err(h) = ctx.lck() {
        return b.not_applicable(h, "");
    }
    let lap = cx.laplacian(Op::Dbar);
    let lambda = cx.get(Op::Lambda);
    let i_theta = cx.interior_dual(cx.theta());
    let with_theta = lap.vstack(lambda).vstack(&i_theta);
    let without = lap.vstack(lambda);
    let id = Matrix::identity(cx.dim());
    for k in 0..n {
        let left = Subspace::kernel_within(&with_theta, &ctx.bd(k, n - 1 - k));
        let right = ctx.box_pq(k, n - 1 - k);
        b.check(
            left == right && bijective(&left, &id, &right),
            format!("(k,n−1−k) = ({k},{}): {} = {}", n - 1 - k, left.dim(), right.dim()),
        );
    }
    for k in 0..=n {
        let left = Subspace::kernel_within(&without, &ctx.bd(k, n - k));
        let right = ctx.box_pq(k, n - k);
        b.check(
            left == right && bijective(&left, &id, &right),
            format!("(k,n−k) = ({k},{}): {} = {}", n - k, left.dim(), right.dim()),
        );
    }
    b.finish("spaces coincide with ker □")
}

pub fn verify_vaisman(ctx: &Context) -> Verdict {
    let mut b = Builder::new(ctx, "VAISMAN");
    let (f, _) = match ctx.vaisman() {
        Ok(x) => x,
        Err(h) => return b.not_applicable(h, ""),
    };
    for c in f.structure_checks(ctx.complex()) {
        b.check(c.holds, c.name);
    }
    let summary = format!("ω′ = {}", ctx.format_form(f.omega_prime()));
    b.finish(summary)
}

pub fn verify_t6(ctx: &Context) -> Verdict {
    let cx = ctx.complex();
    let mut b = Builder::new(ctx, "T6");
    let (_, t) = match ctx.vaisman() {
        Ok(x) => x,
        Err(h) => return b.not_applicable(h, ""),
    };
    let theta = wedge_left(cx, cx.theta());
    for k in 0..ctx.n() as i64 {
        let bk = ctx.table().b(k as usize);
        let (s, s_prev) = (ctx.s_degree(t, k), ctx.s_degree(t, k - 1));
        b.dims((&format!("b^{k}"), bk), (&format!("s_{k} + s_{}", k - 1), s.dim() + s_prev.dim()));
        let shifted = s_prev.map(&theta);
        let span = s.sum(&shifted);
        let harmonic = &ctx.table().betti[k as usize];
        b.check(
            span == *harmonic && span.dim() == s.dim() + shifted.dim(),
            format!("ker Δ_d ∩ Ω^{k} = S^{k} ⊕ θ∧S^{}", k - 1),
        );
    }
    let s: Vec<usize> = (0..ctx.n()).map(|k| t.s(k)).collect();
    b.finish(format!("s = {s:?}"))
}

pub fn verify_t7(ctx: &Context) -> Verdict {
    let cx = ctx.complex();
    let mut b = Builder::new(ctx, "T7");
    let (_, t) = match ctx.vaisman() {
        Ok(x) => x,
        Err(h) => return b.not_applicable(h, ""),
    };
    let (_, t01) = cx.theta_types();
    let theta01 = wedge_left(cx, &t01);
    let n = ctx.n() as i64;
    for k in 0..n {
        for p in 0..=k {
            let q = k - p;
            let (s, s_prev) = (ctx.s_space(t, p, q), ctx.s_space(t, p, q - 1));
            let h = ctx.hodge_pq(p as usize, q as usize);
            b.dims(
                (&format!("h^{{{p},{q}}}"), h.dim()),
                (&format!("s_{{{p},{q}}} + s_{{{p},{}}}", q - 1), s.dim() + s_prev.dim()),
            );
            let shifted = s_prev.map(&theta01);
            let span = s.sum(&shifted);
            b.check(
                span == h && span.dim() == s.dim() + shifted.dim(),
                format!("ker Δ_∂̄ ∩ Ω^{{{p},{q}}} = S^{{{p},{q}}} ⊕ θ^{{0,1}}∧S^{{{p},{}}}", q - 1),
            );
        }
    }
    b.finish(format!("h^{{0,1}} = {}", ctx.table().h(0, 1)))
}

pub fn verify_l4(ctx: &Context) -> Verdict {
    let cx = ctx.complex();
    let mut b = Builder::new(ctx, "L4");
    if let Err(h) = ctx.vaisman() {
        return b.not_applicable(h, "");
    }
    let op = cx.get(Op::Lambda).mul(&wedge_left(cx, cx.theta()));
    let mut count = 0;
    for k in 0..ctx.n() {
        for alpha in ctx.table().betti[k].basis() {
            count += 1;
            b.check(
                is_zero_vec(&op.mul_vec(alpha)),
                format!("Λ(θ∧α) = 0 for α = {}", ctx.format_form(alpha)),
            );
        }
    }
    b.finish(format!("{count} harmonic forms of degree ≤ n−1"))
}

pub fn verify_t10(ctx: &Context) -> Verdict {
    let mut b = Builder::new(ctx, "T10");
    let (_, t) = match ctx.vaisman() {
        Ok(x) => x,
        Err(h) => return b.not_applicable(h, ""),
    };
    let table = ctx.table();
    let n = ctx.n();
    for k in 0..=2 * n {
        let sum: usize = table.bidegrees_of(k).iter().map(|bd| table.h(bd.p, bd.q)).sum();
        b.dims((&format!("b^{k}"), table.b(k)), (&format!("Σ_{{p+q={k}}} h^{{p,q}}"), sum));
    }
    let (bn, s) = (table.b(n), t.s(n - 1));
    b.dims((&format!("b^{n}"), bn), (&format!("2·s_{}", n - 1), 2 * s));
    let chi = table.euler_characteristic();
    b.check(chi == 0, format!("χ = {chi}"));
    b.finish(format!("b{n} = {bn} = 2*s{}", n - 1))
}

pub fn verify_p3(ctx: &Context) -> Verdict {
    let cx = ctx.complex();
    let mut b = Builder::new(ctx, "P3");
    if let Err(h) = ctx.vaisman() {
        return b.not_applicable(h, "");
    }
    let (t10, t01) = cx.theta_types();
    let ops = [
        ("θ", wedge_left(cx, cx.theta())),
        ("θ^{1,0}", wedge_left(cx, &t10)),
        ("θ^{0,1}", wedge_left(cx, &t01)),
    ];
    let n = ctx.n() as i64;
    let mut count = 0;
    for k in 0..n {
        for alpha in ctx.box_pq(k, n - 1 - k).basis() {
            count += 1;
            for (name, w) in &ops {
                b.check(
                    is_zero_vec(&ctx.boxed().mul_vec(&w.mul_vec(alpha))),
                    format!("□({name}∧α) = 0 for α = {}", ctx.format_form(alpha)),
                );
            }
        }
    }
    b.finish(format!("{count} elements of ker □ ∩ Ω^{}", n - 1))
}

pub fn verify_t8(ctx: &Context) -> Verdict {
    let cx = ctx.complex();
    let mut b = Builder::new(ctx, "T8");
    let (f, t) = match ctx.vaisman() {
        Ok(x) => x,
        Err(h) => return b.not_applicable(h, ""),
    };
    let n = ctx.n() as i64;
    let id = Matrix::identity(cx.dim());
    let (_, t01) = cx.theta_types();
    let contraction = f.interior_lee().mul(&wedge_left(cx, &t01));
    let half = Gq::from_ratio(1, 2);
    for p in 0..n {
        let boxed = ctx.box_pq(p, n - 1 - p);
        let s = ctx.s_space(t, p, n - 1 - p);
        b.check(
            boxed == s && bijective(&boxed, &id, &s),
            format!("ker □^{{{p},{}}} = S^{{{p},{}}} (dim {} = {})", n - 1 - p, n - 1 - p, boxed.dim(), s.dim()),
        );
        for gamma in s.basis() {
            let lhs = contraction.mul_vec(gamma);
            let rhs: Vec<Gq> = gamma.iter().map(|x| x * &half).collect();
            b.check(lhs == rhs, format!("i_θ♯(θ^{{0,1}}∧γ) = ½γ for γ = {}", ctx.format_form(gamma)));
        }
    }
    let dims: Vec<String> = (0..n)
        .map(|p| format!("h_□^{{{p},{}}} = {}", n - 1 - p, ctx.box_pq(p, n - 1 - p).dim()))
        .collect();
    b.finish(dims.join(", "))
}

pub fn verify_c1(ctx: &Context) -> Verdict {
    let cx = ctx.complex();
    let mut b = Builder::new(ctx, "C1");
    let (_, t) = match ctx.vaisman() {
        Ok(x) => x,
        Err(h) => return b.not_applicable(h, ""),
    };
    let n = ctx.n();
    let top = ctx.hodge_pq(n, 0);
    let below = ctx.hodge_pq(n - 1, 0);
    let s = ctx.s_space(t, n as i64 - 1, 0);
    b.dims((&format!("h^{{{n},0}}"), top.dim()), (&format!("h^{{{},0}}", n - 1), below.dim()));
    b.check(below == s, format!("ker Δ_∂̄ ∩ Ω^{{{},0}} = S^{{{},0}} (dim {})", n - 1, n - 1, s.dim()));
    let (t10, _) = cx.theta_types();
    b.check(
        bijective(&s, &wedge_left(cx, &t10), &top),
        format!("θ^{{1,0}}∧: S^{{{},0}} → ker Δ_∂̄ ∩ Ω^{{{n},0}} bijective", n - 1),
    );
    b.finish(format!("h^{{{n},0}} = h^{{{},0}} = {}", n - 1, below.dim()))
}

pub fn verify_t9(ctx: &Context) -> Verdict {
    let cx = ctx.complex();
    let mut b = Builder::new(ctx, "T9");
    let (_, t) = match ctx.vaisman() {
        Ok(x) => x,
        Err(h) => return b.not_applicable(h, ""),
    };
    let n = ctx.n() as i64;
    let (t10, t01) = cx.theta_types();
    let (w10, w01) = (wedge_left(cx, &t10), wedge_left(cx, &t01));
    let lap_d = cx.laplacian_d();
    let mut parts = Vec::new();
    for p in 0..=n {
        let q = n - p;
        let boxed = ctx.box_pq(p, q);
        let s1 = ctx.s_space(t, p, q - 1);
        let s2 = ctx.s_space(t, p - 1, q);
        b.dims(
            (&format!("h_□^{{{p},{q}}}"), boxed.dim()),
            (&format!("s_{{{p},{}}} + s_{{{},{q}}}", q - 1, p - 1), s1.dim() + s2.dim()),
        );
        let span = s2.map(&w10).sum(&s1.map(&w01));
        for alpha in boxed.basis() {
            b.check(
                span.contains(alpha),
                format!("α = θ^{{1,0}}∧β₁ + θ^{{0,1}}∧β₂ for α = {}", ctx.format_form(alpha)),
            );
        }
        b.check(span == boxed, format!("ker □^{{{p},{q}}} = θ^{{1,0}}∧S^{{{},{q}}} + θ^{{0,1}}∧S^{{{p},{}}}", p - 1, q - 1));
        let hodge = ctx.hodge_pq(p as usize, q as usize);
        b.check(hodge == boxed, format!("ker Δ_∂̄ ∩ Ω^{{{p},{q}}} = ker □^{{{p},{q}}} (dim {})", hodge.dim()));
        let harmonic = Subspace::kernel_within(&lap_d, &ctx.bd(p, q));
        b.check(harmonic == boxed, format!("ker Δ_d ∩ Ω^{{{p},{q}}} = ker □^{{{p},{q}}} (dim {})", harmonic.dim()));
        parts.push(format!("h_□^{{{p},{q}}} = {}", boxed.dim()));
    }
    let nn = ctx.n();
    let middle = &ctx.table().box_degree[nn];
    let harmonic = &ctx.table().betti[nn];
    b.check(
        middle == harmonic,
        format!("ker Δ_d ∩ Ω^{nn} = ker □ ∩ Ω^{nn} (dim {} = {})", harmonic.dim(), middle.dim()),
    );
    b.finish(format!("{}, b{nn} = {}", parts.join(", "), harmonic.dim()))
}

pub fn verify_c4(ctx: &Context) -> Verdict {
    let mut b = Builder::new(ctx, "C4");
    if let Err(h) = ctx.vaisman() {
        return b.not_applicable(h, "");
    }
    let table = ctx.table();
    let n = ctx.n();
    let bn = table.b(n);
    match bn {
        0 => {
            for k in 0..=2 * n {
                b.check(table.h_box_degree(k) == 0, format!("h_□^{k} = {}", table.h_box_degree(k)));
            }
            b.finish(format!("b{n} = 0 ⇒ ker □ = 0"))
        }
        2 => {
            b.check(table.h(n, 0) == 0, format!("h^{{{n},0}} = {}", table.h(n, 0)));
            b.check(table.h(n - 1, 0) == 0, format!("h^{{{},0}} = {}", n - 1, table.h(n - 1, 0)));
            b.finish(format!("b{n} = 2 ⇒ h^{{{n},0}} = h^{{{},0}} = 0", n - 1))
        }
        _ => b.not_applicable(format!("b^{n} = {bn} is neither 0 nor 2"), ""),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::invariant::catalog;

    #[test]
    fn catalog_verdicts() {
        for m in catalog() {
            for v in verify_all(&m).unwrap() {
                let expect_fail = v.id == "VAISMAN";
                match v.status {
                    Status::Fail => {
                        assert!(expect_fail, "{} {}: {:?}", v.model, v.id, v.failures().collect::<Vec<_>>());
                        let failed: Vec<_> = v.failures().map(|c| c.label.as_str()).collect();
                        assert_eq!(failed, ["omega' = 2i del theta^{0,1}"]);
                    }
                    Status::Pass => {}
                    Status::NotApplicable => assert!(v.hypothesis.is_some()),
                }
            }
        }
    }

    #[test]
    fn torus_routes_lck_theorems_away() {
        let ctx = Context::new(&crate::invariant::catalog_model("torus4").unwrap()).unwrap();
        for id in ["T3", "T4", "P4", "T6", "T8", "T9", "T10", "C1", "C4", "VAISMAN"] {
            assert_eq!(verify(&ctx, id).unwrap().status, Status::NotApplicable, "{id}");
        }
        for id in ["T2", "SL2", "OPS", "L1", "MN"] {
            assert_eq!(verify(&ctx, id).unwrap().status, Status::Pass, "{id}");
        }
    }

    #[test]
    fn kodaira_t10_summary() {
        let ctx = Context::new(&crate::invariant::catalog_model("kodaira-surface").unwrap()).unwrap();
        let v = verify(&ctx, "t10").unwrap();
        assert_eq!(v.status, Status::Pass);
        assert_eq!(v.summary, "b2 = 4 = 2*s1");
        assert!(matches!(verify(&ctx, "T99"), Err(Error::UnknownTheorem(_))));
    }

    #[test]
    fn pairing_detects_singular_maps() {
        let full = Subspace::full(2);
        assert!(bijective(&full, &Matrix::identity(2), &full));
        let singular = Matrix::from_rows(&[vec![Gq::from_int(1), Gq::from_int(1)], vec![Gq::from_int(1), Gq::from_int(1)]]);
        assert!(!bijective(&full, &singular, &full));
    }
}
