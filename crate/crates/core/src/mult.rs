//! Multiplication groups and the standard (tot-)inner generators.

use std::collections::HashSet;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::loops::{Element, LoopTable, TranslationKind};
use crate::perm::Permutation;
use crate::permgroup::PermGroup;

/// The five generator families
/// `T_x = R_x⁻¹L_x`, `U_x = R_x⁻¹M_x`, `L_{x,y} = L_{xy}⁻¹L_xL_y`,
/// `R_{x,y} = R_{yx}⁻¹R_xR_y`, `M_{x,y} = M_{y\x}⁻¹M_xM_y`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum InnerMapName {
    T,
    U,
    Lcomm,
    Rcomm,
    Mcomm,
}

impl InnerMapName {
    pub const ALL: [InnerMapName; 5] = [
        InnerMapName::T,
        InnerMapName::U,
        InnerMapName::Lcomm,
        InnerMapName::Rcomm,
        InnerMapName::Mcomm,
    ];

    /// The families generating `Inn(Q)`.
    pub const INNER: [InnerMapName; 3] =
        [InnerMapName::T, InnerMapName::Lcomm, InnerMapName::Rcomm];

    pub fn arity(self) -> usize {
        match self {
            InnerMapName::T | InnerMapName::U => 1,
            _ => 2,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            InnerMapName::T => "T",
            InnerMapName::U => "U",
            InnerMapName::Lcomm => "L",
            InnerMapName::Rcomm => "R",
            InnerMapName::Mcomm => "M",
        }
    }

    /// Pointwise value `W_args(a)`, without building permutations.
    #[inline]
    pub fn eval(self, q: &LoopTable, args: &[Element], a: Element) -> Element {
        match self {
            InnerMapName::T => {
                let x = args[0];
                q.rdiv(q.mul(x, a), x)
            }
            InnerMapName::U => {
                let x = args[0];
                q.rdiv(q.ldiv(a, x), x)
            }
            InnerMapName::Lcomm => {
                let (x, y) = (args[0], args[1]);
                q.ldiv(q.mul(x, y), q.mul(x, q.mul(y, a)))
            }
            InnerMapName::Rcomm => {
                let (x, y) = (args[0], args[1]);
                q.rdiv(q.mul(q.mul(a, y), x), q.mul(y, x))
            }
            InnerMapName::Mcomm => {
                let (x, y) = (args[0], args[1]);
                q.rdiv(q.ldiv(y, x), q.ldiv(q.ldiv(a, y), x))
            }
        }
    }
}

/// The generator `name` at `args`, composed from translations.
pub fn inner_generator(q: &LoopTable, name: InnerMapName, args: &[Element]) -> Result<Permutation> {
    if args.len() != name.arity() {
        return Err(Error::ArityMismatch {
            name: name.label(),
            expected: name.arity(),
            got: args.len(),
        });
    }
    for &x in args {
        q.check_element(x)?;
    }
    use TranslationKind::*;
    let tr = |k, x| q.translation(k, x);
    let p = match name {
        InnerMapName::T => tr(Right, args[0]).inverse().compose(&tr(Left, args[0])),
        InnerMapName::U => tr(Right, args[0]).inverse().compose(&tr(Middle, args[0])),
        InnerMapName::Lcomm => {
            let (x, y) = (args[0], args[1]);
            tr(Left, q.mul(x, y))
                .inverse()
                .compose(&tr(Left, x).compose(&tr(Left, y)))
        }
        InnerMapName::Rcomm => {
            let (x, y) = (args[0], args[1]);
            tr(Right, q.mul(y, x))
                .inverse()
                .compose(&tr(Right, x).compose(&tr(Right, y)))
        }
        InnerMapName::Mcomm => {
            let (x, y) = (args[0], args[1]);
            tr(Middle, q.ldiv(y, x))
                .inverse()
                .compose(&tr(Middle, x).compose(&tr(Middle, y)))
        }
    };
    Ok(p)
}

/// All argument tuples for a family over `q`, in lexicographic order.
pub fn argument_tuples(q: &LoopTable, name: InnerMapName) -> Vec<Vec<Element>> {
    let n = q.order();
    match name.arity() {
        1 => (0..n).map(|x| vec![x]).collect(),
        _ => (0..n)
            .flat_map(|x| (0..n).map(move |y| vec![x, y]))
            .collect(),
    }
}

/// Every generator of the given families, deduplicated, identities dropped.
pub fn generator_family(q: &LoopTable, names: &[InnerMapName]) -> Vec<Permutation> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for &name in names {
        for args in argument_tuples(q, name) {
            let p = inner_generator(q, name, &args).expect("arity matches");
            if !p.is_identity() && seen.insert(p.clone()) {
                out.push(p);
            }
        }
    }
    out
}

/// The deduplicated `T_x, L_{x,y}, R_{x,y}` generators, cached on the table.
pub fn inner_generators(q: &LoopTable) -> Arc<[Permutation]> {
    q.inner_cache()
        .get_or_init(|| generator_family(q, &InnerMapName::INNER).into())
        .clone()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum AssocGroup {
    Mlt,
    Inn,
    TMlt,
    TInn,
}

pub fn assoc_group(q: &LoopTable, which: AssocGroup) -> Result<PermGroup> {
    use TranslationKind::*;
    let n = q.order();
    let gens = match which {
        AssocGroup::Mlt => q
            .elements()
            .flat_map(|x| [q.translation(Left, x), q.translation(Right, x)])
            .collect(),
        AssocGroup::TMlt => q
            .elements()
            .flat_map(|x| {
                [
                    q.translation(Left, x),
                    q.translation(Right, x),
                    q.translation(Middle, x),
                ]
            })
            .collect(),
        AssocGroup::Inn => inner_generators(q).to_vec(),
        AssocGroup::TInn => generator_family(q, &InnerMapName::ALL),
    };
    PermGroup::new(n, gens)
}
