use std::fmt;

use super::abelian::AbelianGroup;
use crate::error::{Error, Result};
use crate::loops::{Element, LatinSquare, LoopTable, MAX_ORDER};
use crate::perm::Permutation;

/// Data `(φ, ψ, θ)` for the product on `A × F`
/// `(a,x)(b,y) = (φ_{x,y}(a) + ψ_{x,y}(b) + θ_{x,y}, xy)`.
///
/// Entries are stored row-major by `(x, y)`. The pair `(a, x)` is encoded
/// as the index `a + |A|·x`.
#[derive(Clone, Debug, PartialEq)]
pub struct Cocycle {
    a: AbelianGroup,
    f: LoopTable,
    phi: Vec<Permutation>,
    psi: Vec<Permutation>,
    theta: Vec<Element>,
}

/// A failed loop-cocycle border condition at `(x, y)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Violation {
    /// `φ_{x,1} ≠ id`.
    PhiBorder { x: Element, y: Element },
    /// `ψ_{1,y} ≠ id`.
    PsiBorder { x: Element, y: Element },
    /// `θ_{1,y} ≠ 0`.
    ThetaLeft { x: Element, y: Element },
    /// `θ_{x,1} ≠ 0`.
    ThetaRight { x: Element, y: Element },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Violation::PhiBorder { x, y } => write!(f, "phi border at ({x}, {y}): not the identity"),
            Violation::PsiBorder { x, y } => write!(f, "psi border at ({x}, {y}): not the identity"),
            Violation::ThetaLeft { x, y } => write!(f, "theta border at ({x}, {y}): nonzero"),
            Violation::ThetaRight { x, y } => write!(f, "theta border at ({x}, {y}): nonzero"),
        }
    }
}

impl Cocycle {
    pub fn new(
        a: AbelianGroup,
        f: LoopTable,
        phi: Vec<Permutation>,
        psi: Vec<Permutation>,
        theta: Vec<Element>,
    ) -> Result<Self> {
        let m = f.order();
        let cells = m * m;
        if phi.len() != cells || psi.len() != cells || theta.len() != cells {
            return Err(Error::Malformed(format!(
                "cocycle arrays must have {cells} entries"
            )));
        }
        if a.order() * m > MAX_ORDER {
            return Err(Error::CapExceeded {
                what: "extension order",
                limit: MAX_ORDER as u128,
            });
        }
        let mut bad = Vec::new();
        for (name, maps) in [("phi", &phi), ("psi", &psi)] {
            for (c, p) in maps.iter().enumerate() {
                if !a.is_automorphism(p) {
                    bad.push(format!("{name} at ({}, {}) is not an automorphism", c / m, c % m));
                }
            }
        }
        if let Some(&t) = theta.iter().find(|&&t| t >= a.order()) {
            bad.push(format!("theta entry {t} out of range"));
        }
        if !bad.is_empty() {
            return Err(Error::CocycleInvalid(bad));
        }
        Ok(Cocycle {
            a,
            f,
            phi,
            psi,
            theta,
        })
    }

    /// All maps the identity and `θ ≡ 0`: the direct product.
    pub fn trivial(a: AbelianGroup, f: LoopTable) -> Self {
        let cells = f.order() * f.order();
        let id = Permutation::identity(a.order());
        let zero = a.zero();
        Cocycle {
            phi: vec![id.clone(); cells],
            psi: vec![id; cells],
            theta: vec![zero; cells],
            a,
            f,
        }
    }

    /// `φ = ψ = id` with the given `θ`.
    pub fn central(a: AbelianGroup, f: LoopTable, theta: Vec<Element>) -> Result<Self> {
        let t = Cocycle::trivial(a, f);
        Cocycle::new(t.a, t.f, t.phi, t.psi, theta)
    }

    pub fn fiber(&self) -> &AbelianGroup {
        &self.a
    }

    pub fn base(&self) -> &LoopTable {
        &self.f
    }

    #[inline]
    fn cell(&self, x: Element, y: Element) -> usize {
        x * self.f.order() + y
    }

    pub fn phi(&self, x: Element, y: Element) -> &Permutation {
        &self.phi[self.cell(x, y)]
    }

    pub fn psi(&self, x: Element, y: Element) -> &Permutation {
        &self.psi[self.cell(x, y)]
    }

    pub fn theta(&self, x: Element, y: Element) -> Element {
        self.theta[self.cell(x, y)]
    }

    pub fn set_phi(&mut self, x: Element, y: Element, p: Permutation) -> Result<()> {
        self.check_aut(&p)?;
        let c = self.cell(x, y);
        self.phi[c] = p;
        Ok(())
    }

    pub fn set_psi(&mut self, x: Element, y: Element, p: Permutation) -> Result<()> {
        self.check_aut(&p)?;
        let c = self.cell(x, y);
        self.psi[c] = p;
        Ok(())
    }

    pub fn set_theta(&mut self, x: Element, y: Element, t: Element) -> Result<()> {
        if t >= self.a.order() {
            return Err(Error::OutOfRange {
                element: t,
                order: self.a.order(),
            });
        }
        let c = self.cell(x, y);
        self.theta[c] = t;
        Ok(())
    }

    fn check_aut(&self, p: &Permutation) -> Result<()> {
        if self.a.is_automorphism(p) {
            Ok(())
        } else {
            Err(Error::CocycleInvalid(vec!["not an automorphism of the fiber".into()]))
        }
    }

    /// `φ` and `ψ` are identically the identity.
    pub fn is_central(&self) -> bool {
        self.phi.iter().chain(&self.psi).all(Permutation::is_identity)
    }

    #[inline]
    pub fn encode(&self, a: Element, x: Element) -> Element {
        a + self.a.order() * x
    }

    #[inline]
    pub fn decode(&self, p: Element) -> (Element, Element) {
        (p % self.a.order(), p / self.a.order())
    }

    /// The product of two encoded pairs.
    pub fn mul_pairs(&self, p: Element, q: Element) -> Element {
        let (a, x) = self.decode(p);
        let (b, y) = self.decode(q);
        let c = self.cell(x, y);
        let fiber = self.a.add(
            self.a.add(self.phi[c].apply(a), self.psi[c].apply(b)),
            self.theta[c],
        );
        self.encode(fiber, self.f.mul(x, y))
    }

    /// The raw product table, whether or not it has a neutral element.
    pub fn product_square(&self) -> LatinSquare {
        let n = self.a.order() * self.f.order();
        let cells = (0..n * n).map(|c| self.mul_pairs(c / n, c % n)).collect();
        LatinSquare::new(n, cells).expect("automorphic φ, ψ give a quasigroup")
    }

    /// The loop-cocycle border conditions that fail, in cell order.
    pub fn validate(&self) -> Vec<Violation> {
        let one = self.f.neutral();
        let zero = self.a.zero();
        let mut out = Vec::new();
        for y in self.f.elements() {
            if !self.phi(y, one).is_identity() {
                out.push(Violation::PhiBorder { x: y, y: one });
            }
            if !self.psi(one, y).is_identity() {
                out.push(Violation::PsiBorder { x: one, y });
            }
            if self.theta(one, y) != zero {
                out.push(Violation::ThetaLeft { x: one, y });
            }
            if y != one && self.theta(y, one) != zero {
                out.push(Violation::ThetaRight { x: y, y: one });
            }
        }
        out
    }

    pub fn is_loop_cocycle(&self) -> bool {
        self.validate().is_empty()
    }

    /// The extension loop on `A × F`, neutral `(0, 1)`.
    pub fn build_extension(&self) -> Result<LoopTable> {
        let bad = self.validate();
        if !bad.is_empty() {
            return Err(Error::CocycleInvalid(
                bad.iter().map(ToString::to_string).collect(),
            ));
        }
        let q = LoopTable::from_square(self.product_square())?;
        debug_assert_eq!(q.neutral(), self.encode(self.a.zero(), self.f.neutral()));
        Ok(q)
    }

    /// Neutral element `(a, 1)` of the raw product, from the border
    /// conditions `φ_{y,1} = id = ψ_{1,y}` and
    /// `φ_{1,y}(a) + θ_{1,y} = 0 = ψ_{y,1}(a) + θ_{y,1}`.
    pub fn neutral_pair(&self) -> Option<(Element, Element)> {
        let one = self.f.neutral();
        let fiber = &self.a;
        let borders = self
            .f
            .elements()
            .all(|y| self.phi(y, one).is_identity() && self.psi(one, y).is_identity());
        if !borders {
            return None;
        }
        // the y = 1 instance pins a: φ_{1,1}(a) = −θ_{1,1}
        let a = self.phi(one, one).inverse().apply(fiber.neg(self.theta(one, one)));
        let ok = self.f.elements().all(|y| {
            fiber.add(self.phi(one, y).apply(a), self.theta(one, y)) == fiber.zero()
                && fiber.add(self.psi(y, one).apply(a), self.theta(y, one)) == fiber.zero()
        });
        ok.then_some((a, one))
    }

    /// The shifted cocycle `θ̄ = θ + φ(a) + ψ(a) − a`, isomorphic via
    /// `(b, y) ↦ (b − a, y)` and with neutral `(0, 1)`.
    pub fn normalize(&self, a: Element) -> Result<Cocycle> {
        if self.neutral_pair() != Some((a, self.f.neutral())) {
            return Err(Error::NotNeutralAt(a));
        }
        let fiber = &self.a;
        let theta = (0..self.theta.len())
            .map(|c| {
                let t = fiber.add(
                    fiber.add(self.theta[c], self.phi[c].apply(a)),
                    self.psi[c].apply(a),
                );
                fiber.sub(t, a)
            })
            .collect();
        Ok(Cocycle {
            theta,
            ..self.clone()
        })
    }

    /// `(a,x)\(b,y) = (ψ⁻¹_{x,z}(b − φ_{x,z}(a) − θ_{x,z}), z)` with `z = x\y`.
    pub fn ldiv_pairs(&self, p: Element, q: Element) -> Element {
        let (a, x) = self.decode(p);
        let (b, y) = self.decode(q);
        let z = self.f.ldiv(x, y);
        let c = self.cell(x, z);
        let r = self.a.sub(self.a.sub(b, self.phi[c].apply(a)), self.theta[c]);
        self.encode(self.psi[c].inverse().apply(r), z)
    }

    /// `(a,x)/(b,y) = (φ⁻¹_{z,y}(a − ψ_{z,y}(b) − θ_{z,y}), z)` with `z = x/y`.
    pub fn rdiv_pairs(&self, p: Element, q: Element) -> Element {
        let (a, x) = self.decode(p);
        let (b, y) = self.decode(q);
        let z = self.f.rdiv(x, y);
        let c = self.cell(z, y);
        let r = self.a.sub(self.a.sub(a, self.psi[c].apply(b)), self.theta[c]);
        self.encode(self.phi[c].inverse().apply(r), z)
    }
}
