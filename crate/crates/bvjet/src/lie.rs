//! Lie algebra data: structure constants, invariant pairing, representations.
//!
//! All data is validated on construction: antisymmetry and the Jacobi
//! identity for the structure constants, symmetry, nondegeneracy and
//! invariance for the pairing, and the bracket relation for every
//! representation. Validation failures name the axiom that broke.

use crate::linalg;
use crate::rat::{q, rational_from_json, render_rational, Q};
use crate::{BvError, Result};
use num_traits::Zero;

/// A finite-dimensional Lie algebra with a chosen basis, structure constants
/// `f[a][b][c]` (meaning `[e_a, e_b] = sum_c f[a][b][c] e_c`), an invariant
/// nondegenerate symmetric pairing `kappa`, and optional representations.
#[derive(Clone, Debug)]
pub struct LieAlgebra {
    pub name: String,
    pub dim: usize,
    /// `f[a][b][c]`: coefficient of `e_c` in `[e_a, e_b]`.
    pub f: Vec<Vec<Vec<Q>>>,
    /// Invariant pairing `kappa[a][b]`.
    pub kappa: Vec<Vec<Q>>,
    /// Inverse pairing, precomputed during validation.
    pub kappa_inv: Vec<Vec<Q>>,
    pub reps: Vec<Representation>,
}

/// A matrix representation: `matrices[a]` is the operator of `e_a`,
/// stored row-major.
#[derive(Clone, Debug)]
pub struct Representation {
    pub name: String,
    pub matrices: Vec<Vec<Vec<Q>>>,
}

impl LieAlgebra {
    /// Validates and finalizes raw data. `reps` may be empty.
    pub fn new(
        name: &str,
        dim: usize,
        f: Vec<Vec<Vec<Q>>>,
        kappa: Vec<Vec<Q>>,
        reps: Vec<Representation>,
    ) -> Result<Self> {
        if dim == 0 || dim > 16 {
            return Err(BvError::Algebra(format!("dim {dim} out of range 1..=16")));
        }
        let shape_err = |what: &str| BvError::Algebra(format!("{what} has wrong shape for dim {dim}"));
        if f.len() != dim || f.iter().any(|x| x.len() != dim || x.iter().any(|y| y.len() != dim)) {
            return Err(shape_err("structure constants"));
        }
        if kappa.len() != dim || kappa.iter().any(|r| r.len() != dim) {
            return Err(shape_err("kappa"));
        }

        // Antisymmetry f[a][b] = -f[b][a].
        for a in 0..dim {
            for b in 0..dim {
                for c in 0..dim {
                    if f[a][b][c] != -f[b][a][c].clone() {
                        return Err(BvError::Algebra(format!(
                            "antisymmetry fails at f[{a}][{b}][{c}]"
                        )));
                    }
                }
            }
        }

        // Jacobi: [[a,b],c] + [[b,c],a] + [[c,a],b] = 0.
        for a in 0..dim {
            for b in 0..dim {
                for c in 0..dim {
                    for e in 0..dim {
                        let mut s = Q::zero();
                        for d in 0..dim {
                            s += f[a][b][d].clone() * f[d][c][e].clone();
                            s += f[b][c][d].clone() * f[d][a][e].clone();
                            s += f[c][a][d].clone() * f[d][b][e].clone();
                        }
                        if !s.is_zero() {
                            return Err(BvError::Algebra(format!(
                                "Jacobi fails at (a,b,c,e)=({a},{b},{c},{e})"
                            )));
                        }
                    }
                }
            }
        }

        // kappa symmetric.
        for a in 0..dim {
            for b in 0..dim {
                if kappa[a][b] != kappa[b][a] {
                    return Err(BvError::Algebra(format!("kappa not symmetric at ({a},{b})")));
                }
            }
        }

        // kappa invariant: kappa([a,b],c) + kappa(b,[a,c]) = 0.
        for a in 0..dim {
            for b in 0..dim {
                for c in 0..dim {
                    let mut s = Q::zero();
                    for d in 0..dim {
                        s += f[a][b][d].clone() * kappa[d][c].clone();
                        s += f[a][c][d].clone() * kappa[b][d].clone();
                    }
                    if !s.is_zero() {
                        return Err(BvError::Algebra(format!(
                            "kappa invariance fails at (a,b,c)=({a},{b},{c})"
                        )));
                    }
                }
            }
        }

        // kappa nondegenerate.
        let kappa_inv = linalg::inverse(&kappa).ok_or_else(|| BvError::Algebra("kappa singular".into()))?;

        // Representations respect the bracket.
        for rep in &reps {
            if rep.matrices.len() != dim {
                return Err(BvError::Algebra(format!(
                    "representation `{}` has {} matrices for dim {dim}",
                    rep.name,
                    rep.matrices.len()
                )));
            }
            let r = rep.matrices[0].len();
            for m in &rep.matrices {
                if m.len() != r || m.iter().any(|row| row.len() != r) {
                    return Err(BvError::Algebra(format!(
                        "representation `{}` has non-square or ragged matrices",
                        rep.name
                    )));
                }
            }
            for a in 0..dim {
                for b in 0..dim {
                    let comm = mat_sub(
                        &mat_mul(&rep.matrices[a], &rep.matrices[b]),
                        &mat_mul(&rep.matrices[b], &rep.matrices[a]),
                    );
                    let mut expect = vec![vec![Q::zero(); r]; r];
                    for c in 0..dim {
                        if f[a][b][c].is_zero() {
                            continue;
                        }
                        for i in 0..r {
                            for j in 0..r {
                                expect[i][j] += f[a][b][c].clone() * rep.matrices[c][i][j].clone();
                            }
                        }
                    }
                    if comm != expect {
                        return Err(BvError::Algebra(format!(
                            "representation `{}` breaks the bracket at (a,b)=({a},{b})",
                            rep.name
                        )));
                    }
                }
            }
        }

        Ok(LieAlgebra { name: name.to_string(), dim, f, kappa, kappa_inv, reps })
    }

    /// True when all structure constants vanish.
    pub fn is_abelian(&self) -> bool {
        self.f
            .iter()
            .all(|x| x.iter().all(|y| y.iter().all(|z| z.is_zero())))
    }

    /// Adjoint representation built from the structure constants:
    /// `(ad_a)[c][b] = f[a][b][c]`.
    pub fn adjoint_matrices(&self) -> Vec<Vec<Vec<Q>>> {
        let d = self.dim;
        let mut out = vec![vec![vec![Q::zero(); d]; d]; d];
        for a in 0..d {
            for b in 0..d {
                for c in 0..d {
                    out[a][c][b] = self.f[a][b][c].clone();
                }
            }
        }
        out
    }

    /// Direct sum with block-diagonal pairing; representations are dropped
    /// (the summands keep theirs).
    pub fn direct_sum(x: &LieAlgebra, y: &LieAlgebra, name: &str) -> Result<LieAlgebra> {
        let d = x.dim + y.dim;
        let mut f = vec![vec![vec![Q::zero(); d]; d]; d];
        let mut kappa = vec![vec![Q::zero(); d]; d];
        for a in 0..x.dim {
            for b in 0..x.dim {
                kappa[a][b] = x.kappa[a][b].clone();
                for c in 0..x.dim {
                    f[a][b][c] = x.f[a][b][c].clone();
                }
            }
        }
        for a in 0..y.dim {
            for b in 0..y.dim {
                kappa[x.dim + a][x.dim + b] = y.kappa[a][b].clone();
                for c in 0..y.dim {
                    f[x.dim + a][x.dim + b][x.dim + c] = y.f[a][b][c].clone();
                }
            }
        }
        LieAlgebra::new(name, d, f, kappa, vec![])
    }

    /// Built-in algebras by name. Accepts the bare name or a `builtin:` prefix.
    pub fn builtin(name: &str) -> Result<LieAlgebra> {
        let bare = name.strip_prefix("builtin:").unwrap_or(name);
        match bare {
            "abelian1" => Self::abelian(1, "abelian1"),
            "abelian3" => Self::abelian(3, "abelian3"),
            "so3" => Self::so3(),
            "sl2" => Self::sl2(),
            "so3so3" | "so3+so3" => {
                Self::so3().and_then(|a| LieAlgebra::direct_sum(&a, &a, "so3so3"))
            }
            _ => Err(crate::BvError::Parse(format!(
                "unknown builtin algebra '{}', expected one of {:?}",
                bare,
                Self::builtin_names()
            ))),
        }
    }

    /// Names of the built-in algebras, for CLI help and errors.
    pub fn builtin_names() -> &'static [&'static str] {
        &["abelian1", "abelian3", "so3", "sl2", "so3so3"]
    }

    pub fn abelian(dim: usize, name: &str) -> Result<LieAlgebra> {
        let f = vec![vec![vec![Q::zero(); dim]; dim]; dim];
        let mut kappa = vec![vec![Q::zero(); dim]; dim];
        for (a, row) in kappa.iter_mut().enumerate() {
            row[a] = q(1);
        }
        LieAlgebra::new(name, dim, f, kappa, vec![])
    }

    /// so(3) with `[e_a, e_b] = eps_{abc} e_c` and the delta pairing.
    /// The defining (vector) representation coincides with the adjoint one.
    pub fn so3() -> Result<LieAlgebra> {
        let dim = 3;
        let mut f = vec![vec![vec![Q::zero(); dim]; dim]; dim];
        for a in 0..3 {
            for b in 0..3 {
                for c in 0..3 {
                    let e = eps3(a, b, c);
                    if e != 0 {
                        f[a][b][c] = q(e as i64);
                    }
                }
            }
        }
        let mut kappa = vec![vec![Q::zero(); dim]; dim];
        for (a, row) in kappa.iter_mut().enumerate() {
            row[a] = q(1);
        }
        let stub = LieAlgebra { name: String::new(), dim, f: f.clone(), kappa: kappa.clone(), kappa_inv: vec![], reps: vec![] };
        let adj = stub.adjoint_matrices();
        let reps = vec![
            Representation { name: "defining".into(), matrices: adj.clone() },
            Representation { name: "adjoint".into(), matrices: adj },
        ];
        LieAlgebra::new("so3", dim, f, kappa, reps)
    }

    /// sl(2) in the basis (h, e, f) with `[h,e]=2e`, `[h,f]=-2f`, `[e,f]=h`,
    /// and the trace form of the defining representation as the pairing.
    pub fn sl2() -> Result<LieAlgebra> {
        let dim = 3;
        let (ih, ie, if_) = (0usize, 1usize, 2usize);
        let mut f = vec![vec![vec![Q::zero(); dim]; dim]; dim];
        f[ih][ie][ie] = q(2);
        f[ie][ih][ie] = q(-2);
        f[ih][if_][if_] = q(-2);
        f[if_][ih][if_] = q(2);
        f[ie][if_][ih] = q(1);
        f[if_][ie][ih] = q(-1);
        // Tr(XY) in the defining rep: <h,h>=2, <e,f>=<f,e>=1.
        let mut kappa = vec![vec![Q::zero(); dim]; dim];
        kappa[ih][ih] = q(2);
        kappa[ie][if_] = q(1);
        kappa[if_][ie] = q(1);
        let defining = vec![
            vec![vec![q(1), q(0)], vec![q(0), q(-1)]],
            vec![vec![q(0), q(1)], vec![q(0), q(0)]],
            vec![vec![q(0), q(0)], vec![q(1), q(0)]],
        ];
        let stub = LieAlgebra { name: String::new(), dim, f: f.clone(), kappa: kappa.clone(), kappa_inv: vec![], reps: vec![] };
        let adj = stub.adjoint_matrices();
        let reps = vec![
            Representation { name: "defining".into(), matrices: defining },
            Representation { name: "adjoint".into(), matrices: adj },
        ];
        LieAlgebra::new("sl2", dim, f, kappa, reps)
    }

    /// Loads an algebra from a JSON value with the shape
    /// `{"dim": 3, "f": [[[...]]], "kappa": [[...]], "reps": [{"name": ...,
    /// "matrices": [[[...]]]}]}` where every scalar is an integer or a
    /// `"p/q"` string. `f[a][b][c]` is the coefficient of `e_c` in `[e_a,e_b]`.
    pub fn from_json(name: &str, v: &serde_json::Value) -> Result<LieAlgebra> {
        let obj = v
            .as_object()
            .ok_or_else(|| BvError::Parse("algebra spec must be a JSON object".into()))?;
        let dim = obj
            .get("dim")
            .and_then(|d| d.as_u64())
            .ok_or_else(|| BvError::Parse("missing integer field `dim`".into()))? as usize;
        let tensor3 = |key: &str| -> Result<Vec<Vec<Vec<Q>>>> {
            let arr = obj
                .get(key)
                .and_then(|x| x.as_array())
                .ok_or_else(|| BvError::Parse(format!("missing array field `{key}`")))?;
            arr.iter()
                .map(|x| {
                    x.as_array()
                        .ok_or_else(|| BvError::Parse(format!("`{key}` must be a 3d array")))?
                        .iter()
                        .map(|y| {
                            y.as_array()
                                .ok_or_else(|| BvError::Parse(format!("`{key}` must be a 3d array")))?
                                .iter()
                                .map(rational_from_json)
                                .collect()
                        })
                        .collect()
                })
                .collect()
        };
        let matrix = |val: &serde_json::Value, what: &str| -> Result<Vec<Vec<Q>>> {
            val.as_array()
                .ok_or_else(|| BvError::Parse(format!("{what} must be a 2d array")))?
                .iter()
                .map(|row| {
                    row.as_array()
                        .ok_or_else(|| BvError::Parse(format!("{what} must be a 2d array")))?
                        .iter()
                        .map(rational_from_json)
                        .collect()
                })
                .collect()
        };
        let f = tensor3("f")?;
        let kappa = matrix(
            obj.get("kappa")
                .ok_or_else(|| BvError::Parse("missing field `kappa`".into()))?,
            "kappa",
        )?;
        let mut reps = Vec::new();
        if let Some(rs) = obj.get("reps") {
            let rs = rs
                .as_array()
                .ok_or_else(|| BvError::Parse("`reps` must be an array".into()))?;
            for r in rs {
                let ro = r
                    .as_object()
                    .ok_or_else(|| BvError::Parse("each rep must be an object".into()))?;
                let rname = ro
                    .get("name")
                    .and_then(|x| x.as_str())
                    .ok_or_else(|| BvError::Parse("rep missing `name`".into()))?;
                let mats = ro
                    .get("matrices")
                    .and_then(|x| x.as_array())
                    .ok_or_else(|| BvError::Parse("rep missing `matrices`".into()))?;
                let matrices: Result<Vec<Vec<Vec<Q>>>> =
                    mats.iter().map(|m| matrix(m, "rep matrix")).collect();
                reps.push(Representation { name: rname.to_string(), matrices: matrices? });
            }
        }
        LieAlgebra::new(name, dim, f, kappa, reps)
    }

    pub fn from_path(path: &std::path::Path) -> Result<LieAlgebra> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| BvError::Io(format!("{}: {e}", path.display())))?;
        let v: serde_json::Value = serde_json::from_str(&text)
            .map_err(|e| BvError::Parse(format!("{}: {e}", path.display())))?;
        let name = path
            .file_stem()
            .map(|s| s.to_string_lossy().to_string())
            .unwrap_or_else(|| "custom".into());
        Self::from_json(&name, &v)
    }

    /// Serializes back to the JSON spec shape (rationals as strings).
    pub fn to_json(&self) -> serde_json::Value {
        let t3 = |t: &Vec<Vec<Vec<Q>>>| {
            serde_json::Value::Array(
                t.iter()
                    .map(|x| {
                        serde_json::Value::Array(
                            x.iter()
                                .map(|y| {
                                    serde_json::Value::Array(
                                        y.iter()
                                            .map(|z| serde_json::Value::String(render_rational(z)))
                                            .collect(),
                                    )
                                })
                                .collect(),
                        )
                    })
                    .collect(),
            )
        };
        let t2 = |t: &Vec<Vec<Q>>| {
            serde_json::Value::Array(
                t.iter()
                    .map(|row| {
                        serde_json::Value::Array(
                            row.iter()
                                .map(|z| serde_json::Value::String(render_rational(z)))
                                .collect(),
                        )
                    })
                    .collect(),
            )
        };
        serde_json::json!({
            "dim": self.dim,
            "f": t3(&self.f),
            "kappa": t2(&self.kappa),
            "reps": self.reps.iter().map(|r| serde_json::json!({
                "name": r.name,
                "matrices": serde_json::Value::Array(r.matrices.iter().map(|m| t2(m)).collect()),
            })).collect::<Vec<_>>(),
        })
    }
}

fn mat_mul(a: &[Vec<Q>], b: &[Vec<Q>]) -> Vec<Vec<Q>> {
    let n = a.len();
    let m = b[0].len();
    let k = b.len();
    let mut out = vec![vec![Q::zero(); m]; n];
    for i in 0..n {
        for l in 0..k {
            if a[i][l].is_zero() {
                continue;
            }
            for j in 0..m {
                let t = a[i][l].clone() * b[l][j].clone();
                out[i][j] += t;
            }
        }
    }
    out
}

fn mat_sub(a: &[Vec<Q>], b: &[Vec<Q>]) -> Vec<Vec<Q>> {
    a.iter()
        .zip(b.iter())
        .map(|(ra, rb)| ra.iter().zip(rb.iter()).map(|(x, y)| x.clone() - y.clone()).collect())
        .collect()
}

/// Totally antisymmetric symbol on three 0-based indices, `eps3(0,1,2) = 1`.
pub fn eps3(i: usize, j: usize, k: usize) -> i8 {
    match (i, j, k) {
        (0, 1, 2) | (1, 2, 0) | (2, 0, 1) => 1,
        (0, 2, 1) | (2, 1, 0) | (1, 0, 2) => -1,
        _ => 0,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtins_validate() {
        for name in LieAlgebra::builtin_names() {
            let g = LieAlgebra::builtin(name).unwrap();
            assert_eq!(&g.name, name);
            assert!(g.dim >= 1);
        }
    }

    #[test]
    fn sl2_pairing_is_ad_invariant_and_nondegenerate() {
        let g = LieAlgebra::sl2().unwrap();
        assert!(!g.is_abelian());
        // kappa * kappa_inv = id
        for a in 0..g.dim {
            for b in 0..g.dim {
                let mut s = Q::zero();
                for c in 0..g.dim {
                    s += g.kappa[a][c].clone() * g.kappa_inv[c][b].clone();
                }
                assert_eq!(s, if a == b { q(1) } else { q(0) });
            }
        }
    }

    #[test]
    fn singular_kappa_rejected() {
        let dim = 2;
        let f = vec![vec![vec![Q::zero(); dim]; dim]; dim];
        let kappa = vec![vec![q(1), q(1)], vec![q(1), q(1)]];
        let err = LieAlgebra::new("bad", dim, f, kappa, vec![]).unwrap_err();
        assert!(err.to_string().contains("kappa singular"), "{err}");
    }

    #[test]
    fn eps3_cyclic() {
        assert_eq!(eps3(0, 1, 2), 1);
        assert_eq!(eps3(1, 0, 2), -1);
        assert_eq!(eps3(0, 0, 2), 0);
    }

    #[test]
    fn json_round_trip() {
        let g = LieAlgebra::sl2().unwrap();
        let v = g.to_json();
        let g2 = LieAlgebra::from_json("sl2", &v).unwrap();
        assert_eq!(g2.kappa, g.kappa);
        assert_eq!(g2.f, g.f);
        assert_eq!(g2.reps.len(), 2);
    }

    #[test]
    fn direct_sum_validates() {
        let a = LieAlgebra::so3().unwrap();
        let s = LieAlgebra::direct_sum(&a, &a, "so3so3").unwrap();
        assert_eq!(s.dim, 6);
        assert!(!s.is_abelian());
    }
}
