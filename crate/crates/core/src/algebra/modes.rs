//! Weight-labelled superpositions acted on by the su(2) generators.
//!
//! A [`ModeState`] is a finite sum of components, each tagged by a real
//! weight `w` and carrying one member of the function family. The generators
//! move components between weights in unit steps. Weights are stored as one
//! real base plus integer offsets so that stepping up and back down returns
//! to the *identical* floating-point weight; accumulating `w+1−1` in raw
//! `f64` would fracture buckets for generic bases.

use std::collections::BTreeMap;

use crate::algebra::function::AlgebraicFunction;
use crate::algebra::operators::{apply_a, apply_abar, compose};
use crate::eigenfunctions::inner_product;
use crate::error::{Error, Result};

/// Two weights are the same bucket when they differ by less than this.
const WEIGHT_TOL: f64 = 1e-9;

/// Finite weight-indexed superposition `Σ_w |w⟩ ⊗ f_w`.
///
/// The empty state is the zero state. All components share one `beta`;
/// components whose function is zero are dropped, so a state compares equal
/// to zero exactly when every generator image cancels.
#[derive(Debug, Clone, Default)]
pub struct ModeState {
    base: Option<f64>,
    modes: BTreeMap<i64, AlgebraicFunction>,
}

impl ModeState {
    /// The zero state.
    pub fn new() -> Self {
        Self::default()
    }

    /// Build from `(weight, f)` pairs; see [`insert`](Self::insert).
    pub fn from_components<I>(parts: I) -> Result<Self>
    where
        I: IntoIterator<Item = (f64, AlgebraicFunction)>,
    {
        let mut st = Self::new();
        for (w, f) in parts {
            st.insert(w, f)?;
        }
        Ok(st)
    }

    /// Add `f` into the bucket at `weight`.
    ///
    /// The first insertion fixes the base; later weights must sit within
    /// `1e-9` of `base + integer`. Mixing deformation parameters or stacking
    /// functions of different decay exponent into one bucket is an error.
    pub fn insert(&mut self, weight: f64, f: AlgebraicFunction) -> Result<()> {
        if f.is_zero() {
            return Ok(());
        }
        if let Some(b) = self.beta() {
            if b != f.beta() {
                return Err(Error::BetaMismatch(b, f.beta()));
            }
        }
        let offset = match self.base {
            None => {
                self.base = Some(weight);
                0
            }
            Some(base) => {
                let off = (weight - base).round();
                if ((weight - base) - off).abs() > WEIGHT_TOL {
                    return Err(Error::InvalidParameter(format!(
                        "weight {weight} is not an integer step from base {base}"
                    )));
                }
                off as i64
            }
        };
        match self.modes.remove(&offset) {
            None => {
                self.modes.insert(offset, f);
            }
            Some(existing) => {
                if existing.s() != f.s() {
                    return Err(Error::ExponentMismatch(existing.s(), f.s()));
                }
                let sum = existing.add(&f);
                if !sum.is_zero() {
                    self.modes.insert(offset, sum);
                }
            }
        }
        Ok(())
    }

    pub fn is_zero(&self) -> bool {
        self.modes.is_empty()
    }

    /// Deformation parameter shared by all components; `None` when zero.
    pub fn beta(&self) -> Option<f64> {
        self.modes.values().next().map(|f| f.beta())
    }

    /// Components in increasing weight order.
    pub fn components(&self) -> impl Iterator<Item = (f64, &AlgebraicFunction)> {
        let base = self.base.unwrap_or(0.0);
        self.modes.iter().map(move |(o, f)| (base + *o as f64, f))
    }

    /// Component at `weight`, matched to the bucket tolerance.
    pub fn component(&self, weight: f64) -> Option<&AlgebraicFunction> {
        self.components().find(|(w, _)| (w - weight).abs() <= WEIGHT_TOL).map(|(_, f)| f)
    }

    /// Largest absolute polynomial coefficient over all components.
    pub fn max_abs_coeff(&self) -> f64 {
        self.modes.values().fold(0.0, |m, f| m.max(f.max_abs_coeff()))
    }

    fn rebuild<F>(&self, step: i64, map: F) -> Self
    where
        F: Fn(f64, &AlgebraicFunction) -> AlgebraicFunction,
    {
        let base = self.base;
        let mut out = BTreeMap::new();
        if let Some(b) = base {
            for (o, f) in &self.modes {
                let img = map(b + *o as f64, f);
                if !img.is_zero() {
                    out.insert(o + step, img);
                }
            }
        }
        Self { base, modes: out }
    }

    /// Raising generator: each component `(w, f)` moves to `(w+1, A(w)f)`.
    pub fn j_plus(&self) -> Self {
        self.rebuild(1, apply_a)
    }

    /// Lowering generator: each component `(w, f)` moves to `(w−1, Ā(w−1)f)`.
    /// The multiplier is the *destination* weight, evaluated canonically from
    /// the base so that `j_plus` followed by `j_minus` reuses bit-identical
    /// weights.
    pub fn j_minus(&self) -> Self {
        let base = self.base.unwrap_or(0.0);
        self.rebuild(-1, |w, f| {
            // w = base + o; destination weight is base + (o−1).
            let o = (w - base).round() as i64;
            apply_abar(base + (o - 1) as f64, f)
        })
    }

    /// Weight generator: scales each component by its weight.
    pub fn j_z(&self) -> Self {
        self.rebuild(0, |w, f| f.scale(w))
    }

    pub fn scale(&self, c: f64) -> Self {
        self.rebuild(0, |_, f| f.scale(c))
    }

    /// Bucket-wise difference. Buckets are matched by weight value (to the
    /// bucket tolerance), so states with different bases still subtract.
    pub fn sub(&self, other: &Self) -> Result<Self> {
        let mut out = Self::new();
        for (w, f) in self.components() {
            out.insert(w, f.clone())?;
        }
        for (w, f) in other.components() {
            out.insert(w, f.scale(-1.0))?;
        }
        Ok(out)
    }

    /// Weighted inner product: sum of component inner products over matching
    /// weights; orthogonal across distinct weights by construction.
    pub fn dot(&self, other: &Self) -> Result<f64> {
        let mut acc = 0.0;
        for (w, f) in self.components() {
            if let Some(g) = other.component(w) {
                acc += inner_product(f, g)?;
            }
        }
        Ok(acc)
    }

    /// Max-coefficient residuals of the su(2) relations on this state,
    /// relative to the state's largest coefficient:
    ///
    /// * `ladder`: `(J₊J₋ − J₋J₊)ψ − 2β(J_z − ½)ψ`
    /// * `raise`:  `(J_z J₊ − J₊ J_z)ψ − J₊ψ`
    ///
    /// Both products in the ladder relation keep each component in its bucket,
    /// so they are evaluated as fused two-map compositions (the intermediate
    /// carried in split form). The residual then measures the coefficient
    /// identity itself, not the rounding of the seam between two separate
    /// generator applications; that seam behavior is covered by the round-trip
    /// and matrix-element checks instead. The zero state yields `(0, 0)`.
    pub fn commutator_residuals(&self) -> Result<(f64, f64)> {
        let scale = self.max_abs_coeff();
        if scale == 0.0 {
            return Ok((0.0, 0.0));
        }
        let base = self.base.unwrap_or(0.0);

        let mut worst: f64 = 0.0;
        for (o, f) in &self.modes {
            let w = base + *o as f64;
            let wm1 = base + (*o - 1) as f64;
            // J₊J₋ on bucket w is A(w−1)∘Ā(w−1); J₋J₊ is Ā(w)∘A(w).
            let plus_minus = compose(wm1, 1.0, wm1, -1.0, f);
            let minus_plus = compose(w, -1.0, w, 1.0, f);
            let target = f.scale(2.0 * f.beta() * (w - 0.5));
            let diff = plus_minus.sub(&minus_plus).sub(&target);
            worst = worst.max(diff.max_abs_coeff());
        }
        let ladder = worst / scale;

        let raised = self.j_plus();
        let lhs = raised.j_z().sub(&self.j_z().j_plus())?;
        let raise = lhs.sub(&raised)?.max_abs_coeff() / scale;

        Ok((ladder, raise))
    }
}
