use super::abelian::AbelianGroup;
use super::cocycle::Cocycle;
use crate::commutator::a3_conditions;
use crate::error::{Error, Result};
use crate::loops::{Element, LoopTable};
use crate::perm::Permutation;
use crate::structure::{quotient, require_normal, subloop_table, Subloop};

/// A loop rewritten as an extension of a normal subloop by its quotient.
#[derive(Clone, Debug)]
pub struct Decomposition {
    pub cocycle: Cocycle,
    /// Coset representative for each element of the quotient.
    pub transversal: Vec<Element>,
    /// The element of `Q` behind each fiber index.
    pub fiber: Vec<Element>,
    /// `(a, x) ↦ a·x` from the rebuilt extension onto `Q`, as image list.
    pub isomorphism: Vec<Element>,
}

/// Reads the cocycle off a transversal and accepts it when the rebuilt
/// extension maps isomorphically onto `q`. `None` when `a` is not a
/// commutative group, some derived map is not an automorphism of `a`, or
/// the map fails to be an isomorphism.
pub(crate) fn extract_cocycle(q: &LoopTable, a: &Subloop) -> Option<Decomposition> {
    let e = q.neutral();
    let fiber_group = AbelianGroup::new(subloop_table(q, a)).ok()?;
    let quo = quotient(q, a).ok()?;
    let transversal: Vec<Element> = quo
        .cosets
        .iter()
        .map(|c| if c.contains(&e) { e } else { c[0] })
        .collect();
    let f = quo.table.clone();
    let m = f.order();
    let els = a.elements();
    let na = els.len();

    // a map on A given pointwise, as a permutation of fiber indices
    let restrict = |g: &dyn Fn(Element) -> Element| -> Option<Permutation> {
        let images: Option<Vec<usize>> = els.iter().map(|&x| a.index_of(g(x))).collect();
        Permutation::from_images(images?).ok()
    };

    let mut phi = Vec::with_capacity(m * m);
    let mut psi = Vec::with_capacity(m * m);
    let mut theta = Vec::with_capacity(m * m);
    for xi in 0..m {
        for yi in 0..m {
            let (x, y) = (transversal[xi], transversal[yi]);
            let xy = q.mul(x, y);
            phi.push(restrict(&|b| q.rdiv(q.mul(q.mul(b, x), y), xy))?);
            psi.push(restrict(&|b| q.rdiv(q.mul(x, q.mul(b, y)), xy))?);
            let rep = transversal[f.mul(xi, yi)];
            theta.push(a.index_of(q.rdiv(xy, rep))?);
        }
    }
    let cocycle = Cocycle::new(fiber_group, f, phi, psi, theta).ok()?;
    let built = cocycle.build_extension().ok()?;
    let iso: Vec<Element> = (0..na * m)
        .map(|p| {
            let (i, x) = cocycle.decode(p);
            q.mul(els[i], transversal[x])
        })
        .collect();
    let mut seen = vec![false; q.order()];
    if iso.iter().any(|&y| std::mem::replace(&mut seen[y], true)) {
        return None;
    }
    if !built.is_homomorphism(q, &iso) {
        return None;
    }
    Some(Decomposition {
        cocycle,
        transversal,
        fiber: els.to_vec(),
        isomorphism: iso,
    })
}

/// `q` as an abelian extension of the normal subloop `a`, which must
/// satisfy the syntactic abelianness identities.
pub fn decompose_extension(q: &LoopTable, a: &Subloop) -> Result<Decomposition> {
    require_normal(q, a)?;
    let conds = a3_conditions(q, a)?;
    if !conds.all() {
        return Err(Error::NotAbelianIn(format!(
            "fails condition(s) {}",
            conds.failures().join(", ")
        )));
    }
    let d = extract_cocycle(q, a).ok_or_else(|| {
        Error::NotAbelianIn("identities hold but the extension does not rebuild".into())
    })?;
    debug_assert!(d.cocycle.is_loop_cocycle());
    Ok(d)
}

/// The fiber-affine form `γ(a, x) = (c_x + γ_x(a), C(x))` of a permutation
/// of an extension's underlying set.
#[derive(Clone, Debug, PartialEq)]
pub struct FiberAffine {
    /// `c_x`, indexed by `x ∈ F`.
    pub offset: Vec<Element>,
    /// `γ_x`, indexed by `x ∈ F`.
    pub linear: Vec<Permutation>,
    /// `C`, the induced permutation of `F`.
    pub base: Permutation,
}

impl FiberAffine {
    /// Every `γ_x` is the identity.
    pub fn is_translation_only(&self) -> bool {
        self.linear.iter().all(Permutation::is_identity)
    }

    /// `c_1 = 0` and `C(1) = 1`: the necessary and sufficient condition for
    /// an element of the multiplication group to be inner.
    pub fn fixes_neutral_fiber(&self, cocycle: &Cocycle) -> bool {
        let one = cocycle.base().neutral();
        self.offset[one] == cocycle.fiber().zero() && self.base.apply(one) == one
    }
}

/// Components of `γ` when it maps fibers to fibers by affine maps of `A`.
pub fn mlt_element_form(cocycle: &Cocycle, gamma: &Permutation) -> Option<FiberAffine> {
    let fiber = cocycle.fiber();
    let (na, m) = (fiber.order(), cocycle.base().order());
    if gamma.degree() != na * m {
        return None;
    }
    let zero = fiber.zero();
    let mut offset = Vec::with_capacity(m);
    let mut linear = Vec::with_capacity(m);
    let mut base = Vec::with_capacity(m);
    for x in 0..m {
        let (c, cx) = cocycle.decode(gamma.apply(cocycle.encode(zero, x)));
        let mut images = Vec::with_capacity(na);
        for a in 0..na {
            let (b, y) = cocycle.decode(gamma.apply(cocycle.encode(a, x)));
            if y != cx {
                return None;
            }
            images.push(fiber.sub(b, c));
        }
        let lin = Permutation::from_images(images).ok()?;
        if !fiber.is_automorphism(&lin) {
            return None;
        }
        offset.push(c);
        linear.push(lin);
        base.push(cx);
    }
    Some(FiberAffine {
        offset,
        linear,
        base: Permutation::from_images(base).ok()?,
    })
}
