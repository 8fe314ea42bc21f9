//! Observable pairs and the matrices that define them.
//!
//! An [`ObservablePair`] stores the *analysis matrix* `W`: if `ψ` holds the
//! amplitudes of a state in the first basis, the second measurement sees
//! `p_Y = |Wψ|²`. In terms of the overlap matrix `U_ij = <x_i|y_j>` this is
//! `W = U†`. Maximal modulus, Hadamard-ness and the Fourier matrices are
//! unaffected by the adjoint, but support pairs of non-symmetric matrices
//! are reported with rows indexing the second basis and columns the first.

mod file;
pub mod group;

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use serde::Serialize;

pub use file::{parse_unitary_json, unitary_json, FILE_UNITARY_TOL};
pub use group::{
    annihilator, bicharacter, coset_representatives, equality_family, indicator_state, subgroups,
    translate_modulate, AbelianGroup, Subgroup,
};

use crate::error::{Error, Result};
use crate::numerics::{random_unitary_matrix, tensor_product, CMatrix, SeededRng, C64, MAX_DIM, UNITARY_TOL};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ObservablePair {
    label: String,
    matrix: CMatrix,
}

impl ObservablePair {
    /// Wraps `matrix`, rejecting it if `max |W†W - I| > 1e-10`.
    pub fn new(label: impl Into<String>, matrix: CMatrix) -> Result<Self> {
        Self::with_tolerance(label, matrix, UNITARY_TOL)
    }

    pub fn with_tolerance(label: impl Into<String>, matrix: CMatrix, tol: f64) -> Result<Self> {
        matrix.check_finite()?;
        if !(2..=MAX_DIM).contains(&matrix.dim()) {
            return Err(Error::BadDimension(format!("unitary dimension must be in 2..={MAX_DIM}, got {}", matrix.dim())));
        }
        let defect = matrix.unitarity_defect();
        if defect > tol {
            return Err(Error::NotUnitary(defect));
        }
        Ok(Self {
            label: label.into(),
            matrix,
        })
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    pub fn relabel(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    /// `W1 ⊗ W2`.
    pub fn tensor(&self, other: &ObservablePair) -> Result<ObservablePair> {
        let d = self.dim() * other.dim();
        if d > MAX_DIM {
            return Err(Error::TooLarge(format!("tensor product dimension {d} exceeds {MAX_DIM}")));
        }
        Ok(ObservablePair {
            label: format!("{}*{}", self.label, other.label),
            matrix: tensor_product(&self.matrix, &other.matrix),
        })
    }

    /// True if every entry of `W` has zero imaginary part.
    pub fn is_real(&self) -> bool {
        self.matrix.as_slice().iter().all(|z| z.im == 0.0)
    }
}

/// `W_jk = e^{2πi jk/d} / √d`.
pub fn fourier_cyclic(d: usize) -> Result<ObservablePair> {
    let g = AbelianGroup::cyclic(d)?;
    Ok(fourier_group(&g).relabel(format!("fourier:{d}")))
}

/// `W_jk = bic(j, k) / √d` on the mixed-radix encoding of `g`.
pub fn fourier_group(g: &AbelianGroup) -> ObservablePair {
    let d = g.order();
    let scale = 1.0 / (d as f64).sqrt();
    let label = format!(
        "group:{}",
        g.orders().iter().map(usize::to_string).collect::<Vec<_>>().join("x")
    );
    ObservablePair {
        label,
        matrix: CMatrix::from_fn(d, |j, k| g.bic(j, k) * scale),
    }
}

/// True iff every `|W_jk|` is within `tol` of `1/√d`.
pub fn is_hadamard(w: &ObservablePair, tol: f64) -> bool {
    hadamard_defect(w.matrix()) <= tol
}

pub fn hadamard_defect(m: &CMatrix) -> f64 {
    let target = 1.0 / (m.dim() as f64).sqrt();
    m.as_slice()
        .iter()
        .map(|z| (z.norm() - target).abs())
        .fold(0.0, f64::max)
}

/// `D1 W D2` with diagonal unitaries chosen so the first row and first column
/// are real and nonnegative. Moduli and the entropy diagram are unchanged.
pub fn dephase(w: &ObservablePair) -> Result<ObservablePair> {
    let m = w.matrix();
    let d = m.dim();
    for k in 0..d {
        for (row, col) in [(0, k), (k, 0)] {
            if m[(row, col)].norm() < 1e-12 {
                return Err(Error::ZeroEntry { row, col });
            }
        }
    }
    let unit = |z: C64| z / z.norm();
    let cols: Vec<C64> = (0..d).map(|k| unit(m[(0, k)]).conj()).collect();
    let rows: Vec<C64> = (0..d).map(|i| unit(m[(i, 0)] * cols[0]).conj()).collect();
    let mut out = CMatrix::from_fn(d, |i, k| rows[i] * m[(i, k)] * cols[k]);
    // Clear rounding residue so the first row and column are exactly real.
    for k in 0..d {
        out[(0, k)] = C64::new(m[(0, k)].norm(), 0.0);
        out[(k, 0)] = C64::new(m[(k, 0)].norm(), 0.0);
    }
    Ok(ObservablePair {
        label: w.label.clone(),
        matrix: out,
    })
}

/// The analysis matrix of the 3×3 example with `1/c² = 2 < d`.
fn example3() -> CMatrix {
    let a = std::f64::consts::FRAC_1_SQRT_2;
    let b = 0.5;
    CMatrix::from_real_rows(&[vec![a, b, -b], vec![a, -b, b], vec![0.0, a, a]]).expect("finite")
}

/// `η = (1 - √3)/2 + i √(√3/2)`, a unimodular number.
pub fn c6_eta() -> C64 {
    let r3 = 3f64.sqrt();
    C64::new((1.0 - r3) / 2.0, (r3 / 2.0).sqrt())
}

fn c6() -> CMatrix {
    c6_from_eta(c6_eta())
}

/// The 6×6 complex Hadamard matrix built from `eta`. Exposed so the
/// transcription checks can be run against perturbed constants.
pub fn c6_from_eta(eta: C64) -> CMatrix {
    let one = C64::new(1.0, 0.0);
    let p = |k: i32| eta.powi(k);
    let rows = [
        [one, one, one, one, one, one],
        [one, -one, -p(1), -p(2), p(2), p(1)],
        [one, -p(-1), one, p(2), -p(3), p(2)],
        [one, -p(-2), p(-2), -one, p(2), -p(2)],
        [one, p(-2), -p(-3), p(-2), one, -p(1)],
        [one, p(-1), p(-2), -p(-2), -p(-1), -one],
    ];
    let scale = 1.0 / 6f64.sqrt();
    CMatrix::from_fn(6, |i, j| rows[i][j] * scale)
}

/// `c6` or `example3`.
pub fn builtin(name: &str) -> Result<ObservablePair> {
    match name {
        "c6" => ObservablePair::new("c6", c6()),
        "example3" => ObservablePair::new("example3", example3()),
        other => Err(Error::UnknownName(other.to_string())),
    }
}

/// Haar-random unitary, reproducible from `rng`'s seed and stream.
pub fn random_unitary(d: usize, rng: &mut SeededRng) -> Result<ObservablePair> {
    let m = random_unitary_matrix(d, rng)?;
    ObservablePair::new(format!("random:{}:{d}", rng.seed()), m)
}

/// Textual description of a unitary, as accepted on the command line.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum UnitarySpec {
    Fourier(usize),
    Group(Vec<usize>),
    C6,
    Example3,
    Random { seed: u64, d: usize },
    File(PathBuf),
}

impl FromStr for UnitarySpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("bad unitary spec `{s}`"));
        let num = |t: &str| t.trim().parse::<usize>().map_err(|_| bad());
        let (head, rest) = s.split_once(':').unwrap_or((s, ""));
        match (head, rest) {
            ("c6", "") => Ok(Self::C6),
            ("example3", "") => Ok(Self::Example3),
            ("fourier", d) => Ok(Self::Fourier(num(d)?)),
            ("group", orders) => Ok(Self::Group(orders.split('x').map(num).collect::<Result<_>>()?)),
            ("random", rest) => {
                let (seed, d) = rest.split_once(':').ok_or_else(bad)?;
                Ok(Self::Random {
                    seed: seed.trim().parse().map_err(|_| bad())?,
                    d: num(d)?,
                })
            }
            ("file", path) if !path.is_empty() => Ok(Self::File(PathBuf::from(path))),
            _ => Err(bad()),
        }
    }
}

impl fmt::Display for UnitarySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Fourier(d) => write!(f, "fourier:{d}"),
            Self::Group(o) => {
                let parts: Vec<String> = o.iter().map(usize::to_string).collect();
                write!(f, "group:{}", parts.join("x"))
            }
            Self::C6 => f.write_str("c6"),
            Self::Example3 => f.write_str("example3"),
            Self::Random { seed, d } => write!(f, "random:{seed}:{d}"),
            Self::File(p) => write!(f, "file:{}", p.display()),
        }
    }
}

impl UnitarySpec {
    /// Builds the matrix. File input with defect above `1e-8` is rejected
    /// unless `force` is set.
    pub fn resolve(&self, force: bool) -> Result<ObservablePair> {
        match self {
            Self::Fourier(d) => fourier_cyclic(*d),
            Self::Group(o) => Ok(fourier_group(&AbelianGroup::new(o.clone())?)),
            Self::C6 => builtin("c6"),
            Self::Example3 => builtin("example3"),
            Self::Random { seed, d } => random_unitary(*d, &mut SeededRng::new(*seed, 0)),
            Self::File(p) => {
                let text = std::fs::read_to_string(p).map_err(|e| Error::Io(format!("{}: {e}", p.display())))?;
                Ok(parse_unitary_json(&text, force)?.relabel(self.to_string()))
            }
        }
    }
}
