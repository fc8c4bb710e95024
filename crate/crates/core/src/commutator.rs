//! Commutators of normal subloops and the solvability/nilpotence hierarchy.
//!
//! `[A,B]_Q` is the least normal subloop containing every deviation
//! `W_ū(a) / W_v̄(a)` where `W` ranges over the tot-inner generators
//! `T_x, U_x, L_{x,y}, R_{x,y}, M_{x,y}`, `a ∈ A`, and `u_i, v_i` are
//! congruent modulo `B`.
//!
//! Abelianness and centrality of a normal subloop are decided three or four
//! ways (commutator, identities, extension structure), each implemented on
//! its own so the characterizations can be checked against one another.

use crate::error::{Error, Result};
use crate::extensions::decompose::extract_cocycle;
use crate::loops::{Element, LoopTable};
use crate::mult::{argument_tuples, assoc_group, inner_generators, AssocGroup, InnerMapName};
use crate::permgroup::Class;
use crate::structure::{
    center_subloop, direct_decomposition, normal_closure, quotient, require_normal,
    subloop_table, Subloop, STRUCTURE_ORDER_CAP,
};

/// Least element of the `B`-coset of every element.
fn coset_representatives(q: &LoopTable, b: &Subloop) -> Result<Vec<Element>> {
    let quo = quotient(q, b)?;
    let reps = quo.representatives();
    Ok(quo.projection.iter().map(|&c| reps[c]).collect())
}

/// Deviations of the given word families, with `v̄` fixed to the coset
/// representatives of `ū`. Two values congruent to a common third value
/// are congruent to each other, so this generates the same normal subloop
/// as ranging over all congruent pairs.
fn word_deviations(
    q: &LoopTable,
    a: &Subloop,
    reps: &[Element],
    words: &[InnerMapName],
) -> Vec<Element> {
    let mut hit = vec![false; q.order()];
    hit[q.neutral()] = true;
    let mut out = Vec::new();
    for &w in words {
        for args in argument_tuples(q, w) {
            let ref_args: Vec<Element> = args.iter().map(|&u| reps[u]).collect();
            if ref_args == args {
                continue;
            }
            for &x in a.elements() {
                let d = q.rdiv(w.eval(q, &args, x), w.eval(q, &ref_args, x));
                if !hit[d] {
                    hit[d] = true;
                    out.push(d);
                }
            }
        }
    }
    out
}

/// `[A,B]_Q` for normal subloops `A`, `B`.
pub fn commutator_subloop(q: &LoopTable, a: &Subloop, b: &Subloop) -> Result<Subloop> {
    commutator_with_words(q, a, b, &InnerMapName::ALL)
}

/// The same construction restricted to the inner words `T, L, R`.
///
/// Whether this always agrees with [`commutator_subloop`] is not known;
/// it is exposed for comparison only.
pub fn commutator_subloop_inner_only(q: &LoopTable, a: &Subloop, b: &Subloop) -> Result<Subloop> {
    commutator_with_words(q, a, b, &InnerMapName::INNER)
}

fn commutator_with_words(
    q: &LoopTable,
    a: &Subloop,
    b: &Subloop,
    words: &[InnerMapName],
) -> Result<Subloop> {
    require_normal(q, a)?;
    require_normal(q, b)?;
    let reps = coset_representatives(q, b)?;
    let seeds = word_deviations(q, a, &reps, words);
    normal_closure(q, &seeds)
}

/// `[A,A]_Q = 1`.
pub fn is_abelian_in_a1(q: &LoopTable, a: &Subloop) -> Result<bool> {
    Ok(commutator_subloop(q, a, a)?.is_trivial())
}

/// The six identities making up the syntactic characterization of
/// abelianness, evaluated separately.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct A3Conditions {
    /// i) every inner-mapping generator restricts to an automorphism of `A`.
    pub inner_automorphic: bool,
    /// ii) `[a,b] = 1`.
    pub commutator_ab: bool,
    /// iii) `[a,b,x] = 1`.
    pub associator_abx: bool,
    /// iv) `[a,x,b] = 1`.
    pub associator_axb: bool,
    /// v) `[x,a,b] = 1`.
    pub associator_xab: bool,
    /// vi) `[a,x,u] = [a,x,v]` whenever `u/v ∈ A`.
    pub associator_shift: bool,
}

impl A3Conditions {
    pub fn all(&self) -> bool {
        self.as_array().iter().all(|&c| c)
    }

    /// Conditions i) through vi) in order.
    pub fn as_array(&self) -> [bool; 6] {
        [
            self.inner_automorphic,
            self.commutator_ab,
            self.associator_abx,
            self.associator_axb,
            self.associator_xab,
            self.associator_shift,
        ]
    }

    /// Roman-numeral labels of the failing conditions.
    pub fn failures(&self) -> Vec<&'static str> {
        const NAMES: [&str; 6] = ["i", "ii", "iii", "iv", "v", "vi"];
        self.as_array()
            .iter()
            .zip(NAMES)
            .filter_map(|(&ok, name)| (!ok).then_some(name))
            .collect()
    }
}

/// Evaluates each condition by a full quantifier scan.
pub fn a3_conditions(q: &LoopTable, a: &Subloop) -> Result<A3Conditions> {
    require_normal(q, a)?;
    let e = q.neutral();
    let els = a.elements();
    let all_q = || q.elements();

    let inner_automorphic = inner_generators(q).iter().all(|g| {
        els.iter()
            .all(|&x| els.iter().all(|&y| g.apply(q.mul(x, y)) == q.mul(g.apply(x), g.apply(y))))
    });
    let commutator_ab = els
        .iter()
        .all(|&x| els.iter().all(|&y| q.commutator(x, y) == e));
    let pairs = || els.iter().flat_map(|&x| els.iter().map(move |&y| (x, y)));
    let associator_abx = pairs().all(|(x, y)| all_q().all(|z| q.associator(x, y, z) == e));
    let associator_axb = pairs().all(|(x, y)| all_q().all(|z| q.associator(x, z, y) == e));
    let associator_xab = pairs().all(|(x, y)| all_q().all(|z| q.associator(z, x, y) == e));
    let reps = coset_representatives(q, a)?;
    let associator_shift = els.iter().all(|&x| {
        all_q().all(|z| all_q().all(|u| q.associator(x, z, u) == q.associator(x, z, reps[u])))
    });
    Ok(A3Conditions {
        inner_automorphic,
        commutator_ab,
        associator_abx,
        associator_axb,
        associator_xab,
        associator_shift,
    })
}

pub fn is_abelian_in_a3(q: &LoopTable, a: &Subloop) -> Result<bool> {
    Ok(a3_conditions(q, a)?.all())
}

/// Whether `Q` is an abelian extension of `A` by `Q/A`: the cocycle read
/// off a transversal makes `(a, x) ↦ ax` an isomorphism. Returns that
/// cocycle on success.
pub fn is_abelian_in_a4(q: &LoopTable, a: &Subloop) -> Result<Option<crate::extensions::Cocycle>> {
    require_normal(q, a)?;
    Ok(extract_cocycle(q, a).map(|d| d.cocycle))
}

/// The equivalent formulations of centrality of a normal subloop.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CentralityMode {
    /// `[A,Q]_Q = 1`.
    C1,
    /// Every inner mapping fixes `A` pointwise.
    C3,
    /// `[a,x] = [a,x,y] = [x,a,y] = [x,y,a] = 1`.
    C3Prime,
    /// `Q` is a central extension of `A` by `Q/A`.
    C4,
}

impl CentralityMode {
    pub const ALL: [CentralityMode; 4] = [
        CentralityMode::C1,
        CentralityMode::C3,
        CentralityMode::C3Prime,
        CentralityMode::C4,
    ];
}

pub fn is_central_in(q: &LoopTable, a: &Subloop, mode: CentralityMode) -> Result<bool> {
    require_normal(q, a)?;
    let e = q.neutral();
    Ok(match mode {
        CentralityMode::C1 => commutator_subloop(q, a, &Subloop::whole(q))?.is_trivial(),
        CentralityMode::C3 => inner_generators(q)
            .iter()
            .all(|g| a.elements().iter().all(|&x| g.fixes(x))),
        CentralityMode::C3Prime => a.elements().iter().all(|&x| {
            q.elements().all(|y| {
                q.commutator(x, y) == e
                    && q.elements().all(|z| {
                        q.associator(x, y, z) == e
                            && q.associator(y, x, z) == e
                            && q.associator(y, z, x) == e
                    })
            })
        }),
        CentralityMode::C4 => {
            extract_cocycle(q, a).is_some_and(|d| d.cocycle.is_central())
        }
    })
}

/// A descending or ascending chain of subloops with its length.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LoopSeries {
    pub terms: Vec<Subloop>,
    pub class: Class,
}

/// `D₀ = Q`, `D_{i+1} = [D_i, D_i]_Q`.
pub fn congruence_derived_series(q: &LoopTable) -> Result<LoopSeries> {
    let mut terms = vec![Subloop::whole(q)];
    loop {
        let cur = terms.last().unwrap();
        if cur.is_trivial() {
            return Ok(LoopSeries {
                class: Class::Finite(terms.len() - 1),
                terms,
            });
        }
        let next = commutator_subloop(q, cur, cur)?;
        if next == *cur {
            return Ok(LoopSeries {
                terms,
                class: Class::Infinite,
            });
        }
        terms.push(next);
    }
}

/// Least normal subloop of `q` whose quotient is a commutative group:
/// the normal closure of all commutators and associators.
pub fn derived_subloop(q: &LoopTable) -> Subloop {
    let n = q.order();
    let mut seeds = Vec::new();
    let mut hit = vec![false; n];
    let mut push = |z: Element| {
        if !std::mem::replace(&mut hit[z], true) {
            seeds.push(z);
        }
    };
    for x in 0..n {
        for y in 0..n {
            push(q.commutator(x, y));
            for z in 0..n {
                push(q.associator(x, y, z));
            }
        }
    }
    normal_closure(q, &seeds).expect("indices are in range")
}

/// Iterated derived subloops `Q ⊇ Q' ⊇ Q'' ⊇ ...`, each taken inside the
/// previous term as a loop in its own right.
pub fn classical_derived_series(q: &LoopTable) -> Result<LoopSeries> {
    if q.order() > STRUCTURE_ORDER_CAP {
        return Err(Error::CapExceeded {
            what: "loop order for classical solvability",
            limit: STRUCTURE_ORDER_CAP as u128,
        });
    }
    let mut terms = vec![Subloop::whole(q)];
    loop {
        let cur = terms.last().unwrap();
        if cur.is_trivial() {
            return Ok(LoopSeries {
                class: Class::Finite(terms.len() - 1),
                terms,
            });
        }
        let local = subloop_table(q, cur);
        let d = derived_subloop(&local);
        if d.len() == cur.len() {
            return Ok(LoopSeries {
                terms,
                class: Class::Infinite,
            });
        }
        let lifted: Vec<Element> = d.elements().iter().map(|&i| cur.elements()[i]).collect();
        terms.push(Subloop::from_elements(q, &lifted)?);
    }
}

/// Upper central series `Z₀ = 1`, `Z_{i+1}/Z_i = Z(Q/Z_i)`.
pub fn upper_central_series(q: &LoopTable) -> Result<LoopSeries> {
    let mut terms = vec![Subloop::trivial(q)];
    loop {
        let cur = terms.last().unwrap();
        if cur.is_whole() {
            return Ok(LoopSeries {
                class: Class::Finite(terms.len() - 1),
                terms,
            });
        }
        let quo = quotient(q, cur)?;
        let next = quo.preimage(&center_subloop(&quo.table));
        if next == *cur {
            return Ok(LoopSeries {
                terms,
                class: Class::Infinite,
            });
        }
        terms.push(next);
    }
}

pub fn nilpotency_class_loop(q: &LoopTable) -> Result<Class> {
    Ok(upper_central_series(q)?.class)
}

/// Supernilpotence of a finite loop as nilpotence of its multiplication group.
pub fn is_supernilpotent(q: &LoopTable) -> Result<bool> {
    Ok(assoc_group(q, AssocGroup::Mlt)?
        .nilpotency_class()?
        .is_finite())
}

fn is_prime_power(n: usize) -> bool {
    if n < 2 {
        return false;
    }
    let p = (2..=n).find(|d| n.is_multiple_of(*d)).unwrap();
    let mut m = n;
    while m.is_multiple_of(p) {
        m /= p;
    }
    m == 1
}

/// Supernilpotence as a direct product of centrally nilpotent loops of
/// prime-power order, found by recursive direct decomposition.
pub fn supernilpotent_crosscheck(q: &LoopTable) -> Result<bool> {
    if q.order() == 1 {
        return Ok(true);
    }
    if is_prime_power(q.order()) {
        return Ok(nilpotency_class_loop(q)?.is_finite());
    }
    for (a, b) in direct_decomposition(q)? {
        if supernilpotent_crosscheck(&subloop_table(q, &a))?
            && supernilpotent_crosscheck(&subloop_table(q, &b))?
        {
            return Ok(true);
        }
    }
    Ok(false)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_powers() {
        assert!(is_prime_power(2));
        assert!(is_prime_power(8));
        assert!(is_prime_power(9));
        assert!(!is_prime_power(6));
        assert!(!is_prime_power(1));
    }

    #[test]
    fn abelian_group_is_abelian_everywhere() {
        let q = LoopTable::cyclic(6).unwrap();
        let whole = Subloop::whole(&q);
        assert!(commutator_subloop(&q, &whole, &whole).unwrap().is_trivial());
        assert!(is_abelian_in_a1(&q, &whole).unwrap());
        assert!(is_abelian_in_a3(&q, &whole).unwrap());
        assert!(is_abelian_in_a4(&q, &whole).unwrap().is_some());
        assert_eq!(congruence_derived_series(&q).unwrap().class, Class::Finite(1));
        assert_eq!(nilpotency_class_loop(&q).unwrap(), Class::Finite(1));
        assert_eq!(nilpotency_class_loop(&LoopTable::trivial()).unwrap(), Class::Finite(0));
        assert_eq!(
            classical_derived_series(&LoopTable::trivial()).unwrap().class,
            Class::Finite(0)
        );
    }

    #[test]
    fn supernilpotence_of_cyclic_groups() {
        for n in [6, 8] {
            let q = LoopTable::cyclic(n).unwrap();
            assert!(is_supernilpotent(&q).unwrap());
            assert!(supernilpotent_crosscheck(&q).unwrap());
        }
    }

    #[test]
    fn trivial_subloop_is_central() {
        let q = LoopTable::cyclic(4).unwrap();
        let t = Subloop::trivial(&q);
        for mode in CentralityMode::ALL {
            assert!(is_central_in(&q, &t, mode).unwrap());
        }
    }

    #[test]
    fn non_normal_input_is_rejected() {
        // S3 as a permutation table: {id, (01)} is not normal
        let s3 = crate::library::symmetric_group(3);
        let tr = (0..6).find(|&x| x != s3.neutral() && s3.mul(x, x) == s3.neutral()).unwrap();
        let h = crate::structure::subloop_generated(&s3, &[tr]).unwrap();
        assert!(matches!(is_abelian_in_a1(&s3, &h), Err(Error::NotNormal)));
        assert!(matches!(
            is_central_in(&s3, &h, CentralityMode::C3),
            Err(Error::NotNormal)
        ));
    }
}
