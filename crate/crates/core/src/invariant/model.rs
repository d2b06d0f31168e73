//! Lie-algebra models `(𝔤, J, θ)` with an orthonormal frame, their file format
//! and validation.

use std::path::Path;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{DiagCode, Error, Result};
use crate::exterior::{fundamental_form, FormAlgebra};
use crate::linalg::Matrix;
use crate::scalar::{format_rational, parse_rational, Gq, Rational};

/// On-disk model. Indices in `structure_constants` are 1-based:
/// `[i, j, k, c]` means `c^k_{ij} = c`, i.e. `[e_i, e_j]` has `e_k`-component `c`.
/// Column `i` of `J` is `J e_i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelFile {
    pub name: String,
    pub dim: usize,
    pub structure_constants: Vec<(usize, usize, usize, String)>,
    #[serde(rename = "J")]
    pub j: Vec<Vec<String>>,
    pub theta: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expected_betti: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vaisman: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieModel {
    name: String,
    n: usize,
    /// `c[i][j][k] = c^k_{ij}`, 0-based.
    c: Vec<Vec<Vec<Rational>>>,
    j: Matrix,
    theta: Vec<Rational>,
    expected_betti: Option<Vec<usize>>,
    vaisman: bool,
    lee_sign: i8,
}

const CATALOG_FILES: [(&str, &str); 3] = [
    ("torus4", include_str!("../../models/torus4.json")),
    ("hopf-surface", include_str!("../../models/hopf-surface.json")),
    ("kodaira-surface", include_str!("../../models/kodaira-surface.json")),
];

/// Names of the built-in models.
pub fn catalog_names() -> Vec<&'static str> {
    CATALOG_FILES.iter().map(|(name, _)| *name).collect()
}

pub fn catalog_model(name: &str) -> Result<LieModel> {
    let (_, text) = CATALOG_FILES
        .iter()
        .find(|(n, _)| *n == name)
        .ok_or_else(|| Error::UnknownModel(name.to_string()))?;
    LieModel::from_json(text)
}

pub fn catalog() -> Vec<LieModel> {
    catalog_names()
        .into_iter()
        .map(|n| catalog_model(n).expect("catalog models validate"))
        .collect()
}

fn field(value: &str, path: impl FnOnce() -> String) -> Result<Rational> {
    parse_rational(value).map_err(|_| {
        Error::invalid(DiagCode::Field, format!("{}: cannot parse rational {value:?}", path()))
    })
}

impl LieModel {
    pub fn from_json(text: &str) -> Result<Self> {
        let file: ModelFile =
            serde_json::from_str(text).map_err(|e| Error::invalid(DiagCode::Parse, e.to_string()))?;
        Self::from_file(file)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
            path: path.display().to_string(),
            source,
        })?;
        Self::from_json(&text)
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_json()).map_err(|source| Error::Io {
            path: path.display().to_string(),
            source,
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_file()).expect("serializable") + "\n"
    }

    pub fn to_file(&self) -> ModelFile {
        let m = self.real_dim();
        let mut sc = Vec::new();
        for i in 0..m {
            for j in i + 1..m {
                for k in 0..m {
                    let c = &self.c[i][j][k];
                    if !c.is_zero() {
                        sc.push((i + 1, j + 1, k + 1, format_rational(c)));
                    }
                }
            }
        }
        ModelFile {
            name: self.name.clone(),
            dim: m,
            structure_constants: sc,
            j: (0..m)
                .map(|r| (0..m).map(|c| format_rational(&self.j.get(r, c).re)).collect())
                .collect(),
            theta: self.theta.iter().map(format_rational).collect(),
            expected_betti: self.expected_betti.clone(),
            vaisman: Some(self.vaisman),
        }
    }

    /// Parses and runs every validation; each violation has its own code.
    pub fn from_file(file: ModelFile) -> Result<Self> {
        let m = file.dim;
        if m < 4 || m % 2 != 0 || m > 8 {
            return Err(Error::invalid(
                DiagCode::Dim,
                format!("dim = {m}: must be even with 4 ≤ dim ≤ 8"),
            ));
        }
        if file.j.len() != m || file.j.iter().any(|row| row.len() != m) {
            return Err(Error::invalid(DiagCode::Dim, format!("J must be {m}×{m}")));
        }
        if file.theta.len() != m {
            return Err(Error::invalid(DiagCode::Dim, format!("theta must have {m} entries")));
        }
        if let Some(b) = &file.expected_betti {
            if b.len() != m + 1 {
                return Err(Error::invalid(
                    DiagCode::Dim,
                    format!("expected_betti must have {} entries", m + 1),
                ));
            }
        }
        let mut c = vec![vec![vec![Rational::zero(); m]; m]; m];
        let mut seen = vec![vec![vec![false; m]; m]; m];
        for (pos, (i, j, k, value)) in file.structure_constants.iter().enumerate() {
            for (name, idx) in [("i", i), ("j", j), ("k", k)] {
                if !(1..=m).contains(idx) {
                    return Err(Error::invalid(
                        DiagCode::Dim,
                        format!("structure_constants[{pos}].{name} = {idx} outside 1..={m}"),
                    ));
                }
            }
            let x = field(value, || format!("structure_constants[{pos}]"))?;
            let (i, j, k) = (i - 1, j - 1, k - 1);
            if seen[i][j][k] {
                return Err(Error::invalid(
                    DiagCode::Field,
                    format!("structure_constants[{pos}]: duplicate entry for c^{}_{{{}{}}}", k + 1, i + 1, j + 1),
                ));
            }
            seen[i][j][k] = true;
            if i == j && !x.is_zero() {
                return Err(Error::invalid(
                    DiagCode::Antisym,
                    format!("c^{}_{{{}{}}} must vanish", k + 1, i + 1, j + 1),
                ));
            }
            c[i][j][k] = x;
        }
        for i in 0..m {
            for j in 0..m {
                for k in 0..m {
                    match (seen[i][j][k], seen[j][i][k]) {
                        (true, true) if c[i][j][k] != -c[j][i][k].clone() => {
                            return Err(Error::invalid(
                                DiagCode::Antisym,
                                format!(
                                    "c^{k1}_{{{i1}{j1}}} = {} but c^{k1}_{{{j1}{i1}}} = {}",
                                    format_rational(&c[i][j][k]),
                                    format_rational(&c[j][i][k]),
                                    k1 = k + 1,
                                    i1 = i + 1,
                                    j1 = j + 1
                                ),
                            ))
                        }
                        (true, false) => c[j][i][k] = -c[i][j][k].clone(),
                        _ => {}
                    }
                }
            }
        }
        let mut jm = Matrix::zeros(m, m);
        for (r, row) in file.j.iter().enumerate() {
            for (col, value) in row.iter().enumerate() {
                let x = field(value, || format!("J[{r}][{col}]"))?;
                jm.set(r, col, Gq::from_rational(x));
            }
        }
        let theta = file
            .theta
            .iter()
            .enumerate()
            .map(|(i, v)| field(v, || format!("theta[{i}]")))
            .collect::<Result<Vec<_>>>()?;
        let mut model = LieModel {
            name: file.name,
            n: m / 2,
            c,
            j: jm,
            theta,
            expected_betti: file.expected_betti,
            vaisman: file.vaisman.unwrap_or(false),
            lee_sign: 1,
        };
        model.validate()?;
        Ok(model)
    }

    fn validate(&mut self) -> Result<()> {
        let m = self.real_dim();
        // Jacobi on basis triples
        for a in 0..m {
            for b in 0..m {
                for c in 0..m {
                    let (x, y, z) = (unit(m, a), unit(m, b), unit(m, c));
                    let s1 = self.bracket(&self.bracket(&x, &y), &z);
                    let s2 = self.bracket(&self.bracket(&y, &z), &x);
                    let s3 = self.bracket(&self.bracket(&z, &x), &y);
                    if (0..m).any(|k| !(&s1[k] + &s2[k] + &s3[k]).is_zero()) {
                        return Err(Error::invalid(
                            DiagCode::Jacobi,
                            format!("Jacobi identity fails on (e{}, e{}, e{})", a + 1, b + 1, c + 1),
                        ));
                    }
                }
            }
        }
        for i in 0..m {
            let trace: Rational = (0..m).map(|k| self.c[i][k][k].clone()).sum();
            if !trace.is_zero() {
                return Err(Error::invalid(
                    DiagCode::Unimodular,
                    format!("tr ad(e{}) = {} ≠ 0: no compact quotient", i + 1, format_rational(&trace)),
                ));
            }
        }
        let id = Matrix::identity(m);
        if self.j.mul(&self.j) != id.neg() {
            return Err(Error::invalid(DiagCode::Complex, "J² ≠ −id"));
        }
        if self.j.transpose().mul(&self.j) != id {
            return Err(Error::invalid(DiagCode::Orthogonal, "g(J·, J·) ≠ g"));
        }
        for a in 0..m {
            for b in a + 1..m {
                let nij = self.nijenhuis(&unit(m, a), &unit(m, b));
                if nij.iter().any(|x| !x.is_zero()) {
                    return Err(Error::invalid(
                        DiagCode::Nijenhuis,
                        format!("Nijenhuis tensor N(e{}, e{}) ≠ 0", a + 1, b + 1),
                    ));
                }
            }
        }
        let alg = FormAlgebra::new(m);
        let d = self.differential(&alg);
        let theta = alg.one_form(&self.theta_gq());
        if !d.mul_vec(&theta).iter().all(Zero::is_zero) {
            return Err(Error::invalid(DiagCode::Closed, "dθ ≠ 0"));
        }
        let omega = fundamental_form(&alg, &self.j);
        let d_omega = d.mul_vec(&omega);
        let theta_omega = alg.wedge(&theta, &omega);
        let sign = [1i8, -1].into_iter().find(|&s| {
            d_omega
                .iter()
                .zip(&theta_omega)
                .all(|(a, b)| *a == b * &Gq::from_int(s as i64))
        });
        self.lee_sign = sign.ok_or_else(|| Error::invalid(DiagCode::Lck, "dω ≠ ±θ∧ω"))?;
        if self.vaisman {
            if self.theta.iter().all(Zero::is_zero) {
                return Err(Error::invalid(DiagCode::Vaisman, "θ = 0 on a model flagged Vaisman"));
            }
            let norm: Rational = self.theta.iter().map(|x| x * x).sum();
            if !norm.is_one() {
                return Err(Error::invalid(
                    DiagCode::Vaisman,
                    format!("|θ|² = {} ≠ 1", format_rational(&norm)),
                ));
            }
            if !self.lee_form_parallel() {
                return Err(Error::invalid(DiagCode::Vaisman, "∇θ ≠ 0"));
            }
        }
        Ok(())
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn real_dim(&self) -> usize {
        2 * self.n
    }

    pub fn structure_constant(&self, i: usize, j: usize, k: usize) -> &Rational {
        &self.c[i][j][k]
    }

    pub fn complex_structure(&self) -> &Matrix {
        &self.j
    }

    pub fn theta(&self) -> &[Rational] {
        &self.theta
    }

    pub fn theta_gq(&self) -> Vec<Gq> {
        self.theta.iter().cloned().map(Gq::from_rational).collect()
    }

    pub fn theta_is_zero(&self) -> bool {
        self.theta.iter().all(Zero::is_zero)
    }

    pub fn expected_betti(&self) -> Option<&[usize]> {
        self.expected_betti.as_deref()
    }

    pub fn is_vaisman(&self) -> bool {
        self.vaisman
    }

    /// The `s ∈ {+1, −1}` with `(d − sθ∧)ω = 0`.
    pub fn lee_sign(&self) -> i8 {
        self.lee_sign
    }

    pub fn bracket(&self, x: &[Rational], y: &[Rational]) -> Vec<Rational> {
        let m = self.real_dim();
        let mut out = vec![Rational::zero(); m];
        for i in 0..m {
            if x[i].is_zero() {
                continue;
            }
            for j in 0..m {
                if y[j].is_zero() {
                    continue;
                }
                let xy = &x[i] * &y[j];
                for (k, slot) in out.iter_mut().enumerate() {
                    if !self.c[i][j][k].is_zero() {
                        *slot += &xy * &self.c[i][j][k];
                    }
                }
            }
        }
        out
    }

    fn apply_j(&self, x: &[Rational]) -> Vec<Rational> {
        let m = self.real_dim();
        (0..m)
            .map(|r| (0..m).map(|c| &self.j.get(r, c).re * &x[c]).sum())
            .collect()
    }

    /// `N(X, Y) = [JX, JY] − J[JX, Y] − J[X, JY] − [X, Y]`.
    pub fn nijenhuis(&self, x: &[Rational], y: &[Rational]) -> Vec<Rational> {
        let (jx, jy) = (self.apply_j(x), self.apply_j(y));
        let a = self.bracket(&jx, &jy);
        let b = self.apply_j(&self.bracket(&jx, y));
        let c = self.apply_j(&self.bracket(x, &jy));
        let d = self.bracket(x, y);
        (0..x.len()).map(|k| &a[k] - &b[k] - &c[k] - &d[k]).collect()
    }

    /// Chevalley–Eilenberg differential: `de^k = −Σ_{i<j} c^k_{ij} e^i ∧ e^j`.
    pub fn differential(&self, alg: &FormAlgebra) -> Matrix {
        let m = self.real_dim();
        let images: Vec<Vec<Gq>> = (0..m)
            .map(|k| {
                let mut v = vec![Gq::zero(); alg.len()];
                for i in 0..m {
                    for j in i + 1..m {
                        let c = &self.c[i][j][k];
                        if !c.is_zero() {
                            v[alg.index_of((1 << i) | (1 << j))] = Gq::from_rational(-c.clone());
                        }
                    }
                }
                v
            })
            .collect();
        alg.derivation_from_images(&images, true)
    }

    /// Christoffel symbols `Γ[i][j][k] = g(∇_{e_i} e_j, e_k)` from the Koszul
    /// formula for a left-invariant orthonormal frame.
    pub fn levi_civita(&self) -> Vec<Vec<Vec<Rational>>> {
        let m = self.real_dim();
        let half = crate::scalar::rat(1, 2);
        let mut gamma = vec![vec![vec![Rational::zero(); m]; m]; m];
        for i in 0..m {
            for j in 0..m {
                for k in 0..m {
                    let v = &self.c[i][j][k] - &self.c[j][k][i] + &self.c[k][i][j];
                    gamma[i][j][k] = v * &half;
                }
            }
        }
        gamma
    }

    /// Components `(∇_{e_i} θ♯)_k`.
    pub fn nabla_theta(&self) -> Vec<Vec<Rational>> {
        let m = self.real_dim();
        let gamma = self.levi_civita();
        (0..m)
            .map(|i| {
                (0..m)
                    .map(|k| (0..m).map(|j| &self.theta[j] * &gamma[i][j][k]).sum())
                    .collect()
            })
            .collect()
    }

    pub fn lee_form_parallel(&self) -> bool {
        self.nabla_theta().iter().flatten().all(Zero::is_zero)
    }

    pub fn theta_norm_sqr(&self) -> Rational {
        self.theta.iter().map(|x| x * x).sum()
    }
}

fn unit(m: usize, i: usize) -> Vec<Rational> {
    let mut v = vec![Rational::zero(); m];
    v[i] = Rational::one();
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    #[test]
    fn catalog_loads() {
        assert_eq!(catalog_names(), vec!["torus4", "hopf-surface", "kodaira-surface"]);
        for m in catalog() {
            assert_eq!(LieModel::from_json(&m.to_json()).unwrap(), m);
        }
        assert!(matches!(catalog_model("k3"), Err(Error::UnknownModel(_))));
    }

    #[test]
    fn lee_sign_and_parallel() {
        for name in ["hopf-surface", "kodaira-surface"] {
            let m = catalog_model(name).unwrap();
            assert_eq!(m.lee_sign(), 1);
            assert!(m.lee_form_parallel());
            assert_eq!(m.theta_norm_sqr(), rat(1, 1));
        }
    }

    #[test]
    fn koszul_hand_values() {
        // Hopf: [e2,e3] = e4, so g(∇_{e2} e3, e4) = ½(1 − c^2_{34} + c^3_{42}) = ½(1 − 1 + 1)
        let m = catalog_model("hopf-surface").unwrap();
        assert_eq!(m.levi_civita()[1][2][3], rat(1, 2));
        // Kodaira: g(∇_{e1} e2, e4) = ½(c^4_{12} − c^1_{24} + c^2_{41}) = −½
        let k = catalog_model("kodaira-surface").unwrap();
        assert_eq!(k.levi_civita()[0][1][3], rat(-1, 2));
    }

    fn hopf_file() -> ModelFile {
        serde_json::from_str(include_str!("../../models/hopf-surface.json")).unwrap()
    }

    #[test]
    fn rejections() {
        let mut f = hopf_file();
        f.structure_constants.push((3, 2, 4, "2".into()));
        assert_eq!(LieModel::from_file(f).unwrap_err().code(), Some(DiagCode::Antisym));

        let mut f = hopf_file();
        f.j[0][1] = "1".into();
        assert_eq!(LieModel::from_file(f).unwrap_err().code(), Some(DiagCode::Complex));

        let mut f = hopf_file();
        f.theta[0] = "x".into();
        let err = LieModel::from_file(f).unwrap_err();
        assert_eq!(err.code(), Some(DiagCode::Field));
        assert!(err.to_string().contains("theta[0]"));

        let mut f = hopf_file();
        f.dim = 5;
        assert_eq!(LieModel::from_file(f).unwrap_err().code(), Some(DiagCode::Dim));

        let mut f = hopf_file();
        f.theta = vec!["0".into(), "1".into(), "0".into(), "0".into()];
        assert_eq!(LieModel::from_file(f).unwrap_err().code(), Some(DiagCode::Closed));

        let mut f = hopf_file();
        f.theta = vec!["2".into(), "0".into(), "0".into(), "0".into()];
        assert_eq!(LieModel::from_file(f).unwrap_err().code(), Some(DiagCode::Lck));

        assert_eq!(
            LieModel::from_json("{\"name\": 1}").unwrap_err().code(),
            Some(DiagCode::Parse)
        );
    }

    #[test]
    fn jacobi_and_unimodular_and_integrability() {
        // [e1,e2] = e3, [e1,e3] = e1 violates Jacobi on (e1, e2, e3)
        let mut f = hopf_file();
        f.structure_constants = vec![(1, 2, 3, "1".into()), (1, 3, 1, "1".into())];
        assert_eq!(LieModel::from_file(f).unwrap_err().code(), Some(DiagCode::Jacobi));

        // [e1,e2] = e2 is not unimodular
        let mut f = hopf_file();
        f.structure_constants = vec![(1, 2, 2, "1".into())];
        assert_eq!(LieModel::from_file(f).unwrap_err().code(), Some(DiagCode::Unimodular));

        // Heisenberg × ℝ with J e1 = e3 is not integrable
        let mut f = hopf_file();
        f.structure_constants = vec![(1, 2, 3, "1".into())];
        f.j = vec![
            vec!["0".into(), "0".into(), "-1".into(), "0".into()],
            vec!["0".into(), "0".into(), "0".into(), "-1".into()],
            vec!["1".into(), "0".into(), "0".into(), "0".into()],
            vec!["0".into(), "1".into(), "0".into(), "0".into()],
        ];
        f.theta = vec!["0".into(); 4];
        f.vaisman = None;
        assert_eq!(LieModel::from_file(f).unwrap_err().code(), Some(DiagCode::Nijenhuis));
    }
}
