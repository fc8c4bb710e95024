//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any
//! failure.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use common::*;
use loopcomm::commutator::*;
use loopcomm::extensions::*;
use loopcomm::iso::is_isomorphic;
use loopcomm::library::*;
use loopcomm::mult::*;
use loopcomm::perm::Permutation;
use loopcomm::permgroup::{Class, PermGroup};
use loopcomm::presets::{run_preset, Preset};
use loopcomm::structure::*;
use loopcomm::{LoopTable, Result};

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Result<Outcome> {
    Ok(Outcome {
        pass,
        detail: detail.into(),
    })
}

/// Pool (a) of the abelianness criteria plus 200 random extensions.
fn main_pool() -> Vec<PoolEntry> {
    let mut pool = small_pool(true);
    pool.extend(random_extension_pool(2024, 200));
    pool
}

fn ac1(pool: &[PoolEntry]) -> Result<Outcome> {
    let mut pairs = 0;
    let mut abelian = 0;
    for e in pool {
        for a in all_normal_subloops(&e.q)? {
            pairs += 1;
            let a1 = is_abelian_in_a1(&e.q, &a)?;
            let a3 = is_abelian_in_a3(&e.q, &a)?;
            let a4 = is_abelian_in_a4(&e.q, &a)?.is_some();
            if a1 != a3 || a1 != a4 {
                return outcome(false, format!("{}: A={:?} gives {a1}/{a3}/{a4}", e.name, a.elements()));
            }
            abelian += a1 as usize;
        }
    }
    outcome(true, format!("{} loops, {pairs} normal subloops, {abelian} abelian in their loop", pool.len()))
}

fn ac2(pool: &[PoolEntry]) -> Result<Outcome> {
    let mut pairs = 0;
    let mut central = 0;
    for e in pool {
        let z = center_subloop(&e.q);
        for a in all_normal_subloops(&e.q)? {
            pairs += 1;
            let modes = CentralityMode::ALL.map(|m| is_central_in(&e.q, &a, m));
            let modes: Vec<bool> = modes.into_iter().collect::<Result<_>>()?;
            if modes.iter().any(|&m| m != modes[0]) {
                return outcome(false, format!("{}: modes disagree {modes:?}", e.name));
            }
            if modes[0] != a.is_subset_of(&z) {
                return outcome(false, format!("{}: C1 differs from containment in the center", e.name));
            }
            if modes[0] && !is_abelian_in_a1(&e.q, &a)? {
                return outcome(false, format!("{}: central but not abelian", e.name));
            }
            central += modes[0] as usize;
        }
    }
    outcome(true, format!("{pairs} normal subloops, {central} central"))
}

fn ac3() -> Result<Outcome> {
    let mut pairs = 0;
    let groups = small_groups();
    for (name, g) in &groups {
        let normals = all_normal_subloops(g)?;
        for a in &normals {
            for b in &normals {
                pairs += 1;
                let c = set_of(commutator_subloop(g, a, b)?.elements());
                if c != group_commutator(g, &set_of(a.elements()), &set_of(b.elements())) {
                    return outcome(false, format!("{name}: commutator mismatch"));
                }
            }
        }
        let dl = group_derived_length(g).map_or(Class::Infinite, Class::Finite);
        let nc = group_nilpotency_class(g).map_or(Class::Infinite, Class::Finite);
        let got = (
            congruence_derived_series(g)?.class,
            classical_derived_series(g)?.class,
            nilpotency_class_loop(g)?,
        );
        if got != (dl, dl, nc) {
            return outcome(false, format!("{name}: classes {got:?}, expected {dl} {dl} {nc}"));
        }
    }
    outcome(true, format!("{} groups of order <= 16, {pairs} normal pairs", groups.len()))
}

fn ac4() -> Result<Outcome> {
    let start = Instant::now();
    let space = CocycleSpace::new(AbelianGroup::cyclic(4)?, LoopTable::cyclic(2)?, CocycleKind::Abelian)?;
    let fiber: Vec<usize> = (0..4).collect();
    let hits = search_cocycles(&space, SearchMode::Exhaustive, None, |q, _| {
        let a = Subloop::from_elements(q, &fiber).unwrap();
        !is_abelian_in_a1(q, &a).unwrap()
            && classical_derived_series(q).unwrap().class.is_finite()
            && !congruence_derived_series(q).unwrap().class.is_finite()
            && assoc_group(q, AssocGroup::Mlt).unwrap().solvable_class().unwrap().is_finite()
    })?;
    let elapsed = start.elapsed();
    if !hits.is_empty() && elapsed < Duration::from_secs(10) {
        return outcome(true, format!("{} hits among {} cocycles in {elapsed:.2?}", hits.len(), space.size().unwrap()));
    }
    // the fiber of every loop-cocycle extension is abelian in it, so the
    // literal search cannot succeed; report the Z4[⊕] witness alongside
    let p = Preset::builtin("z4-by-z2-nonabelian")?;
    let w = run_preset(&p, 0, 0, Some(1))?;
    let note = match w.first() {
        Some(w) => format!("a Z4[+] loop of order 8 (Latin square #{}) has the four properties: {}", w.index, w.verdict),
        None => "no Z4[+] witness either".into(),
    };
    outcome(
        false,
        format!(
            "0 of {} loop cocycles give a non-abelian fiber ({elapsed:.2?}); every built extension has an abelian fiber; {note}",
            space.size().unwrap()
        ),
    )
}

fn ac5() -> Result<Outcome> {
    let p = Preset::builtin("z2cubed-nonsolvable-inn")?;
    let start = Instant::now();
    let w = run_preset(&p, 0, 100_000, Some(1))?;
    let Some(w) = w.first() else {
        return outcome(false, "no hit within budget 100000 at seed 0");
    };
    let cong = congruence_derived_series(&w.table)?.class;
    let inn = assoc_group(&w.table, AssocGroup::Inn)?.solvable_class()?;
    let ok = cong.finite().is_some_and(|k| k <= 2) && inn == Class::Infinite;
    outcome(ok, format!("candidate {} after {:.2?}: congruence class {cong}, Inn solvable class {inn}", w.index, start.elapsed()))
}

fn ac6(pool: &[PoolEntry]) -> Result<Outcome> {
    let start = Instant::now();
    let p = Preset::builtin("order6-nilpotent")?;
    let hits = run_preset(&p, 0, 0, None)?;
    let elapsed = start.elapsed();
    let good = hits.iter().find(|w| {
        let q = &w.table;
        q.order() == 6
            && !q.is_associative()
            && nilpotency_class_loop(q).unwrap() == Class::Finite(2)
            && !is_supernilpotent(q).unwrap()
            && !supernilpotent_crosscheck(q).unwrap()
    });
    for e in pool {
        if is_supernilpotent(&e.q)? != supernilpotent_crosscheck(&e.q)? {
            return outcome(false, format!("{}: supernilpotence tests disagree", e.name));
        }
    }
    let ok = good.is_some() && elapsed < Duration::from_secs(5);
    outcome(ok, format!("{} nonassociative nilpotent loops of order 6 in {elapsed:.2?}; tests agree on {} pool loops", hits.len(), pool.len()))
}

fn ac7() -> Result<Outcome> {
    let klein = run_preset(&Preset::builtin("goplus-z2sq-not-i")?, 0, 0, Some(1))?;
    let z4 = run_preset(&Preset::builtin("goplus-z4-not-vi")?, 0, 0, Some(1))?;
    let z4_not_i = run_preset(&Preset::builtin("goplus-z4-not-i")?, 0, 0, Some(1))?;
    let detail = format!(
        "G=Z2^2 not-i witnesses: {}; G=Z4 not-vi witness: {}; G=Z4 not-i witness: {}{}",
        klein.len(),
        z4.first().map_or("none".into(), |w| format!("#{}", w.index)),
        z4_not_i.first().map_or("none".into(), |w| format!("#{}", w.index)),
        if klein.is_empty() {
            "; every permutation of Z2^2 fixing 0 is an automorphism, so i) holds for all 576 squares"
        } else {
            ""
        }
    );
    outcome(!klein.is_empty() && !z4.is_empty(), detail)
}

fn ac8() -> Result<Outcome> {
    let ab = |f: &[usize]| AbelianGroup::new(abelian_group(f).unwrap()).unwrap();
    let nonassoc5 = loops_with_neutral_zero(5).into_iter().find(|q| !q.is_associative()).unwrap();
    let nonassoc6 = loops_with_neutral_zero(6).into_iter().find(|q| !q.is_associative()).unwrap();
    let shapes: Vec<(AbelianGroup, LoopTable)> = vec![
        (ab(&[2]), LoopTable::cyclic(3)?),
        (ab(&[3]), LoopTable::cyclic(2)?),
        (ab(&[2]), symmetric_group(3)),
        (ab(&[2]), nonassoc5.clone()),
        (ab(&[3]), nonassoc5),
        (ab(&[2]), nonassoc6),
        (ab(&[2, 2]), LoopTable::cyclic(4)?),
        (ab(&[2]), dihedral_group(4)),
        (ab(&[2]), dicyclic_group(2)),
        (ab(&[4]), abelian_group(&[2, 2])?),
    ];
    let mut checked = 0;
    for k in 0..100u64 {
        let (a, f) = &shapes[k as usize % shapes.len()];
        let space = CocycleSpace::new(a.clone(), f.clone(), CocycleKind::Central)?;
        let c = space.random_candidate(77, k);
        let q = c.build_extension()?;
        for which in [AssocGroup::Mlt, AssocGroup::Inn] {
            let sq = assoc_group(&q, which)?.solvable_class()?;
            let sf = assoc_group(f, which)?.solvable_class()?;
            if let (Some(x), Some(y)) = (sq.finite(), sf.finite()) {
                checked += 1;
                if x > y + 1 {
                    return outcome(false, format!("cocycle {k}: {which:?} class {x} exceeds {y} + 1"));
                }
            }
        }
    }
    outcome(true, format!("100 central cocycles, {checked} finite comparisons"))
}

/// Inner mappings of a quotient, for one loop and normal subloop: `Inn(L)` acts on
/// `L ⊔ L/N` generator-wise; the map is well defined when the combined
/// group has the order of `Inn(L)`, and its kernel is the stabilizer of
/// the coset points.
fn inner_quotient_map(l: &LoopTable, nsub: &Subloop) -> Result<std::result::Result<(), String>> {
    let quo = quotient(l, nsub)?;
    let (n, k) = (l.order(), quo.table.order());
    let mut combined = Vec::new();
    let mut images = Vec::new();
    for name in InnerMapName::INNER {
        for args in argument_tuples(l, name) {
            let g = inner_generator(l, name, &args)?;
            let bar_args: Vec<usize> = args.iter().map(|&x| quo.projection[x]).collect();
            let h = inner_generator(&quo.table, name, &bar_args)?;
            let mut p = g.images().to_vec();
            p.extend(h.images().iter().map(|&y| y + n));
            combined.push(Permutation::from_images(p)?);
            images.push(h);
        }
    }
    let inn_l = assoc_group(l, AssocGroup::Inn)?;
    let inn_q = assoc_group(&quo.table, AssocGroup::Inn)?;
    let joint = PermGroup::with_base_prefix(n + k, combined, (n..n + k).collect())?;
    let (ol, oq, oj) = (inn_l.order()?, inn_q.order()?, joint.order()?);
    if oj != ol {
        return Ok(Err(format!("not well defined: |joint| {oj} vs |Inn L| {ol}")));
    }
    if PermGroup::new(k, images)?.order()? != oq {
        return Ok(Err("not surjective".into()));
    }
    let kernel = joint.chain()?.stabilizer_order(k);
    if kernel * oq != ol || ol % oq != 0 {
        return Ok(Err(format!("kernel {kernel} times {oq} is not {ol}")));
    }
    // the kernel is exactly the set of inner maps fixing every coset
    let fixes_cosets = |p: &Permutation| (0..n).all(|x| quo.projection[p.apply(x)] == quo.projection[x]);
    match inn_l.elements(20_000) {
        Ok(all) => {
            let count = all.iter().filter(|p| fixes_cosets(p)).count() as u128;
            if count != kernel {
                return Ok(Err(format!("kernel {kernel} but {count} maps fix every coset")));
            }
        }
        Err(_) => {
            let gens = joint.chain()?.stabilizer_generators(k);
            if !gens.iter().all(|g| fixes_cosets(&Permutation::from_images(g.images()[..n].to_vec()).unwrap())) {
                return Ok(Err("kernel generator moves a coset".into()));
            }
        }
    }
    Ok(Ok(()))
}

fn ac9(pool: &[PoolEntry]) -> Result<Outcome> {
    let mut pairs = 0;
    for e in pool {
        for nsub in all_normal_subloops(&e.q)? {
            pairs += 1;
            if let Err(msg) = inner_quotient_map(&e.q, &nsub)? {
                return outcome(false, format!("{}: {msg}", e.name));
            }
        }
    }
    outcome(true, format!("{pairs} loop/normal subloop pairs"))
}

fn ac10(pool: &[PoolEntry]) -> Result<Outcome> {
    let mut count = 0;
    for e in pool {
        let Some(c) = &e.cocycle else { continue };
        count += 1;
        let q = &e.q;
        let one = c.base().neutral();
        let fiber: Vec<usize> = (0..c.fiber().order()).map(|a| c.encode(a, one)).collect();
        let d = decompose_extension(q, &Subloop::from_elements(q, &fiber)?)?;
        let rebuilt = d.cocycle.build_extension()?;
        if !rebuilt.is_homomorphism(q, &d.isomorphism) || is_isomorphic(&rebuilt, q).is_none() {
            return outcome(false, format!("{}: rebuild is not isomorphic", e.name));
        }
        let ab = c.fiber();
        for s in 0..ab.order() {
            let mut shifted = c.clone();
            for x in c.base().elements() {
                for y in c.base().elements() {
                    let t = ab.add(ab.sub(ab.sub(c.theta(x, y), c.phi(x, y).apply(s)), c.psi(x, y).apply(s)), s);
                    shifted.set_theta(x, y, t)?;
                }
            }
            let Some((a, _)) = shifted.neutral_pair() else {
                return outcome(false, format!("{}: shifted cocycle has no neutral pair", e.name));
            };
            let fixed = shifted.normalize(a)?;
            let raw = LoopTable::from_square(shifted.product_square())?;
            if !fixed.is_loop_cocycle() || is_isomorphic(&raw, &fixed.build_extension()?).is_none() {
                return outcome(false, format!("{}: normalization at shift {s} failed", e.name));
            }
        }
        for p in q.elements() {
            for r in q.elements() {
                if c.ldiv_pairs(p, r) != q.ldiv(p, r) || c.rdiv_pairs(p, r) != q.rdiv(p, r) {
                    return outcome(false, format!("{}: division closed form differs at ({p}, {r})", e.name));
                }
            }
        }
    }
    outcome(true, format!("{count} extensions round-tripped"))
}

type Criterion<'a> = Box<dyn Fn() -> Result<Outcome> + 'a>;

fn main() -> ExitCode {
    let pool = main_pool();
    let criteria: Vec<(&str, Criterion)> = vec![
        ("AC-1", Box::new(|| ac1(&pool))),
        ("AC-2", Box::new(|| ac2(&pool))),
        ("AC-3", Box::new(ac3)),
        ("AC-4", Box::new(ac4)),
        ("AC-5", Box::new(ac5)),
        ("AC-6", Box::new(|| ac6(&pool))),
        ("AC-7", Box::new(ac7)),
        ("AC-8", Box::new(ac8)),
        ("AC-9", Box::new(|| ac9(&pool))),
        ("AC-10", Box::new(|| ac10(&pool))),
    ];
    let mut failed = 0;
    for (label, run) in criteria {
        let start = Instant::now();
        let o = run().unwrap_or_else(|e| Outcome {
            pass: false,
            detail: format!("error: {e}"),
        });
        failed += !o.pass as usize;
        println!(
            "{label} {}: {} [{:.1?}]",
            if o.pass { "PASS" } else { "FAIL" },
            o.detail,
            start.elapsed()
        );
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
