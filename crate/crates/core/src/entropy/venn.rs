use serde::Serialize;

use super::state::DensityMatrix;
use crate::error::{Error, Result};
use crate::scalar::Real;

/// Two-set entropy diagram, in bits.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct VennDiagram2<T> {
    pub s_a: T,
    pub s_b: T,
    pub s_ab: T,
    pub s_a_given_b: T,
    pub s_b_given_a: T,
    pub s_a_mutual_b: T,
}

impl<T: Real> VennDiagram2<T> {
    /// Largest violation of the chain and mutual-entropy identities.
    pub fn consistency_defect(&self) -> T {
        let chain_a = (self.s_ab - self.s_a - self.s_b_given_a).abs();
        let chain_b = (self.s_ab - self.s_b - self.s_a_given_b).abs();
        let mutual = (self.s_a_mutual_b - (self.s_a + self.s_b - self.s_ab)).abs();
        chain_a.max(chain_b).max(mutual)
    }

    pub fn map<U>(&self, f: impl Fn(T) -> U) -> VennDiagram2<U> {
        VennDiagram2 {
            s_a: f(self.s_a),
            s_b: f(self.s_b),
            s_ab: f(self.s_ab),
            s_a_given_b: f(self.s_a_given_b),
            s_b_given_a: f(self.s_b_given_a),
            s_a_mutual_b: f(self.s_a_mutual_b),
        }
    }
}

/// Three-set entropy diagram: the seven regions plus every marginal and
/// joint entropy, in bits.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct VennDiagram3<T> {
    pub s_a: T,
    pub s_b: T,
    pub s_c: T,
    pub s_ab: T,
    pub s_ac: T,
    pub s_bc: T,
    pub s_abc: T,
    pub s_a_given_bc: T,
    pub s_b_given_ac: T,
    pub s_c_given_ab: T,
    pub s_a_mutual_b_given_c: T,
    pub s_a_mutual_c_given_b: T,
    pub s_b_mutual_c_given_a: T,
    pub s_center: T,
}

impl<T: Real> VennDiagram3<T> {
    pub fn from_entropies(s_a: T, s_b: T, s_c: T, s_ab: T, s_ac: T, s_bc: T, s_abc: T) -> Self {
        let s_a_mutual_b_given_c = s_ac + s_bc - s_c - s_abc;
        let s_a_mutual_c_given_b = s_ab + s_bc - s_b - s_abc;
        let s_b_mutual_c_given_a = s_ab + s_ac - s_a - s_abc;
        let s_a_mutual_b = s_a + s_b - s_ab;
        Self {
            s_a,
            s_b,
            s_c,
            s_ab,
            s_ac,
            s_bc,
            s_abc,
            s_a_given_bc: s_abc - s_bc,
            s_b_given_ac: s_abc - s_ac,
            s_c_given_ab: s_abc - s_ab,
            s_a_mutual_b_given_c,
            s_a_mutual_c_given_b,
            s_b_mutual_c_given_a,
            s_center: s_a_mutual_b - s_a_mutual_b_given_c,
        }
    }

    /// Largest mismatch between a joint entropy and the sum of the regions
    /// it covers.
    pub fn region_defect(&self) -> T {
        let a = self.s_a_given_bc
            + self.s_a_mutual_b_given_c
            + self.s_a_mutual_c_given_b
            + self.s_center;
        let b = self.s_b_given_ac
            + self.s_a_mutual_b_given_c
            + self.s_b_mutual_c_given_a
            + self.s_center;
        let c = self.s_c_given_ab
            + self.s_a_mutual_c_given_b
            + self.s_b_mutual_c_given_a
            + self.s_center;
        let ab = a + self.s_b_given_ac + self.s_b_mutual_c_given_a;
        let ac = a + self.s_c_given_ab + self.s_b_mutual_c_given_a;
        let bc = b + self.s_c_given_ab + self.s_a_mutual_c_given_b;
        let abc = ab + self.s_c_given_ab;
        [
            (a, self.s_a),
            (b, self.s_b),
            (c, self.s_c),
            (ab, self.s_ab),
            (ac, self.s_ac),
            (bc, self.s_bc),
            (abc, self.s_abc),
        ]
        .iter()
        .map(|&(x, y)| (x - y).abs())
        .fold(T::zero(), |m, d| m.max(d))
    }

    pub fn map<U>(&self, f: impl Fn(T) -> U) -> VennDiagram3<U> {
        VennDiagram3 {
            s_a: f(self.s_a),
            s_b: f(self.s_b),
            s_c: f(self.s_c),
            s_ab: f(self.s_ab),
            s_ac: f(self.s_ac),
            s_bc: f(self.s_bc),
            s_abc: f(self.s_abc),
            s_a_given_bc: f(self.s_a_given_bc),
            s_b_given_ac: f(self.s_b_given_ac),
            s_c_given_ab: f(self.s_c_given_ab),
            s_a_mutual_b_given_c: f(self.s_a_mutual_b_given_c),
            s_a_mutual_c_given_b: f(self.s_a_mutual_c_given_b),
            s_b_mutual_c_given_a: f(self.s_b_mutual_c_given_a),
            s_center: f(self.s_center),
        }
    }
}

pub fn venn2<T: Real>(rho_ab: &DensityMatrix<T>) -> Result<VennDiagram2<T>> {
    let n = rho_ab.factorization().len();
    if n != 2 {
        return Err(Error::FactorCount {
            expected: 2,
            actual: n,
        });
    }
    let s_a = rho_ab.subsystem_entropy(&[0])?;
    let s_b = rho_ab.subsystem_entropy(&[1])?;
    let s_ab = rho_ab.entropy();
    Ok(VennDiagram2 {
        s_a,
        s_b,
        s_ab,
        s_a_given_b: s_ab - s_b,
        s_b_given_a: s_ab - s_a,
        s_a_mutual_b: s_a + s_b - s_ab,
    })
}

pub fn venn3<T: Real>(rho_abc: &DensityMatrix<T>) -> Result<VennDiagram3<T>> {
    let n = rho_abc.factorization().len();
    if n != 3 {
        return Err(Error::FactorCount {
            expected: 3,
            actual: n,
        });
    }
    let s = |keep: &[usize]| rho_abc.subsystem_entropy(keep);
    Ok(VennDiagram3::from_entropies(
        s(&[0])?,
        s(&[1])?,
        s(&[2])?,
        s(&[0, 1])?,
        s(&[0, 2])?,
        s(&[1, 2])?,
        rho_abc.entropy(),
    ))
}
