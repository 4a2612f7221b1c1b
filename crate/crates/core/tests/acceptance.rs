//! Acceptance suite: one test per criterion, each printing a PASS line with
//! the verified counts. Everything is exact; there are no tolerances
//! anywhere. Randomness is seeded, so the suite is deterministic.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use abelkit::abelian::{
    ext1_z, pontryagin_dual, primary_decomposition, BilinearPairing, FpAbGroup, GroupHom, QModZ,
};
use abelkit::cech::{aw_cup_cech, cech_complex, CechCochain, CoveringPresheaf};
use abelkit::complex::{derived_tensor, kunneth_verify, tor1, Complex};
use abelkit::group_cohomology::{
    aw_cup_bar, tame_duality_pairing, BarCochain, MonogenicModule,
};
use abelkit::matrix::{hermite_normal_form, smith_normal_form, IntMatrix};
use abelkit::monodromy::{
    component_groups, graph_to_datum, monodromy_pairing, DegenerationGraph, ExtConnectingOracle,
    UniformizationDatum,
};
use abelkit::valuation::check_eval_diagram;

fn big(v: i64) -> BigInt {
    BigInt::from(v)
}

fn random_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize, bound: i64) -> IntMatrix {
    let entries: Vec<i64> = (0..rows * cols)
        .map(|_| rng.gen_range(-bound..=bound))
        .collect();
    IntMatrix::from_i64(rows, cols, &entries)
}

#[test]
fn criterion_01_normal_forms() {
    let mut rng = ChaCha8Rng::seed_from_u64(101);
    let mut square = 0usize;
    for _ in 0..1000 {
        let rows = rng.gen_range(0..=6);
        let cols = rng.gen_range(0..=6);
        let a = random_matrix(&mut rng, rows, cols, 10);
        let snf = smith_normal_form(&a);
        assert_eq!(&(&snf.u * &a) * &snf.v, snf.s, "U*A*V != S for {a}");
        assert_eq!(snf.u.det().abs(), BigInt::one(), "U not unimodular");
        assert_eq!(snf.v.det().abs(), BigInt::one(), "V not unimodular");
        let d = snf.diagonal();
        for i in 0..d.len() {
            assert!(!d[i].is_negative(), "negative diagonal in {a}");
            if i + 1 < d.len() {
                if d[i].is_zero() {
                    assert!(d[i + 1].is_zero(), "zeros not last in {a}");
                } else {
                    assert!(
                        d[i + 1].mod_floor(&d[i]).is_zero(),
                        "divisibility chain broken in {a}"
                    );
                }
            }
        }
        if rows == cols {
            square += 1;
            assert_eq!(snf.s.det().abs(), a.det().abs(), "|det S| != |det A|");
        }
        let (h, u) = hermite_normal_form(&a);
        assert_eq!(&u * &a, h, "U*A != H for {a}");
        assert_eq!(u.det().abs(), BigInt::one(), "HNF transform not unimodular");
    }
    println!("PASS 1: normal forms on 1000 random matrices ({square} square), exact");
}

#[test]
fn criterion_02_monodromy_perfectness_and_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(202);
    let mut checked = 0usize;
    let mut oracle_pairs = 0usize;
    while checked < 200 {
        let d = rng.gen_range(1..=5);
        let m = random_matrix(&mut rng, d, d, 9);
        let Ok(datum) = UniformizationDatum::new(m) else {
            continue;
        };
        checked += 1;
        // the pairing operation itself re-derives the closed form against
        // the Ext oracle on generators whenever d <= 4
        let pairing = monodromy_pairing(&datum);
        assert!(pairing.is_perfect(), "pairing not perfect for {}", datum.matrix());
        if d <= 4 {
            let cg = component_groups(&datum);
            let oracle = ExtConnectingOracle::new(&datum);
            let elements = if cg.phi.order().unwrap() <= big(30) {
                cg.phi
                    .elements()
                    .into_iter()
                    .flat_map(|x| {
                        cg.phi_prime
                            .elements()
                            .into_iter()
                            .map(move |y| (x.clone(), y))
                    })
                    .collect::<Vec<_>>()
            } else {
                (0..25)
                    .map(|_| {
                        let x: Vec<BigInt> = (0..cg.phi.num_generators())
                            .map(|_| big(rng.gen_range(0..50)))
                            .collect();
                        let y: Vec<BigInt> = (0..cg.phi_prime.num_generators())
                            .map(|_| big(rng.gen_range(0..50)))
                            .collect();
                        (cg.phi.reduce(&x), cg.phi_prime.reduce(&y))
                    })
                    .collect()
            };
            for (x, y) in elements {
                let via_formula = pairing.evaluate(&x, &y);
                let via_oracle =
                    oracle.pair(&cg.phi_lifts.apply(&x), &cg.phi_prime_lifts.apply(&y));
                assert_eq!(via_formula, via_oracle, "oracle mismatch for {}", datum.matrix());
                oracle_pairs += 1;
            }
        }
    }
    println!(
        "PASS 2: 200 random data perfect; closed form = Ext oracle on {oracle_pairs} element pairs (d <= 4), exact"
    );
}

#[test]
fn criterion_03_golden_values() {
    let five = UniformizationDatum::new(IntMatrix::from_i64(1, 1, &[5])).unwrap();
    let cg = component_groups(&five);
    assert_eq!(cg.phi, FpAbGroup::cyclic(5));
    assert_eq!(cg.phi_prime, FpAbGroup::cyclic(5));
    let p = monodromy_pairing(&five);
    assert_eq!(p.evaluate(&[big(1)], &[big(1)]), QModZ::new(big(1), big(5)));

    let d23 = UniformizationDatum::new(IntMatrix::from_i64(2, 2, &[2, 0, 0, 3])).unwrap();
    let cg = component_groups(&d23);
    assert_eq!(cg.phi, FpAbGroup::cyclic(6));
    let p = monodromy_pairing(&d23);
    let x1 = cg.projection.apply(&[big(1), big(0)]);
    let y1 = cg.projection_prime.apply(&[big(1), big(0)]);
    let x2 = cg.projection.apply(&[big(0), big(1)]);
    let y2 = cg.projection_prime.apply(&[big(0), big(1)]);
    assert_eq!(p.evaluate(&x1, &y1), QModZ::new(big(1), big(2)));
    assert_eq!(p.evaluate(&x2, &y2), QModZ::new(big(1), big(3)));
    assert!(p.evaluate(&x1, &y2).is_zero());
    assert!(p.evaluate(&x2, &y1).is_zero());
    println!("PASS 3: golden values u=[5] and u=diag(2,3), exact");
}

#[test]
fn criterion_04_transpose_symmetry() {
    let mut rng = ChaCha8Rng::seed_from_u64(404);
    let mut checked = 0usize;
    let mut pairs = 0usize;
    while checked < 60 {
        let d = rng.gen_range(1..=4);
        let m = random_matrix(&mut rng, d, d, 6);
        let Ok(datum) = UniformizationDatum::new(m) else {
            continue;
        };
        checked += 1;
        let p = monodromy_pairing(&datum);
        let pt = monodromy_pairing(&datum.transposed());
        // coker(u) and coker(uᵀ) swap roles under transposition, and the
        // presentations are computed identically, so the value tables must
        // be each other's transposes
        let v = p.values();
        let vt = pt.values();
        for (i, row) in v.iter().enumerate() {
            for (j, val) in row.iter().enumerate() {
                assert_eq!(val, &vt[j][i], "table transpose mismatch");
                pairs += 1;
            }
        }
        // and elementwise through the bilinear extension on small groups
        let cg = component_groups(&datum);
        if cg.phi.order().unwrap() <= big(16) {
            for x in cg.phi.elements() {
                for y in cg.phi_prime.elements() {
                    assert_eq!(p.evaluate(&x, &y), pt.evaluate(&y, &x));
                }
            }
        }
    }
    println!("PASS 4: transpose symmetry on 60 random data ({pairs} generator pairs), exact");
}

#[test]
fn criterion_05_graph_oracle() {
    let mut suite: Vec<DegenerationGraph> = Vec::new();
    // paths, cycles, complete graphs
    for n in 2..=6usize {
        let edges: Vec<(usize, usize)> = (0..n - 1).map(|i| (i, i + 1)).collect();
        suite.push(DegenerationGraph::new(n, edges).unwrap());
    }
    for n in 3..=6usize {
        let mut edges: Vec<(usize, usize)> = (0..n - 1).map(|i| (i, i + 1)).collect();
        edges.push((n - 1, 0));
        suite.push(DegenerationGraph::new(n, edges).unwrap());
    }
    for n in 3..=5usize {
        let mut edges = Vec::new();
        for a in 0..n {
            for b in a + 1..n {
                edges.push((a, b));
            }
        }
        suite.push(DegenerationGraph::new(n, edges).unwrap());
    }
    // multigraphs with loops, banana graph, wheel
    suite.push(DegenerationGraph::new(2, vec![(0, 1), (0, 1), (0, 0)]).unwrap());
    suite.push(DegenerationGraph::new(2, vec![(0, 1), (0, 1), (0, 1), (1, 1)]).unwrap());
    suite.push(
        DegenerationGraph::new(
            5,
            vec![
                (0, 1),
                (0, 2),
                (0, 3),
                (0, 4),
                (1, 2),
                (2, 3),
                (3, 4),
                (4, 1),
            ],
        )
        .unwrap(),
    );
    suite.push(DegenerationGraph::new(1, vec![]).unwrap());
    // seeded random connected graphs on <= 6 vertices
    let mut rng = ChaCha8Rng::seed_from_u64(505);
    while suite.len() < 40 {
        let n = rng.gen_range(2..=6);
        let e = rng.gen_range(n - 1..=(n * (n - 1) / 2 + 2).min(9));
        let edges: Vec<(usize, usize)> = (0..e)
            .map(|_| (rng.gen_range(0..n), rng.gen_range(0..n)))
            .collect();
        if let Ok(g) = DegenerationGraph::new(n, edges) {
            suite.push(g);
        }
    }
    for g in &suite {
        let datum = graph_to_datum(g);
        let cg = component_groups(&datum);
        let trees = g.spanning_tree_count_bruteforce();
        assert_eq!(
            cg.phi.order().unwrap(),
            trees,
            "critical group order != tree count for {g:?}"
        );
        // base-vertex independence: relabel so vertex 1 becomes the base
        if g.vertices() > 1 {
            let relabel = |v: usize| match v {
                0 => 1,
                1 => 0,
                other => other,
            };
            let edges: Vec<(usize, usize)> = g
                .edges()
                .iter()
                .map(|&(a, b)| (relabel(a), relabel(b)))
                .collect();
            let g2 = DegenerationGraph::new(g.vertices(), edges).unwrap();
            let cg2 = component_groups(&graph_to_datum(&g2));
            assert_eq!(cg.phi, cg2.phi, "base vertex changed the group for {g:?}");
        }
    }
    // K4 golden value
    let k4 = DegenerationGraph::new(4, vec![(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)])
        .unwrap();
    let cg = component_groups(&graph_to_datum(&k4));
    assert_eq!(cg.phi, FpAbGroup::from_orders(&[big(4), big(4)], 0));
    assert_eq!(k4.spanning_tree_count_bruteforce(), big(16));
    println!(
        "PASS 5: critical group order = spanning tree count on {} graphs; K4 = Z/4 x Z/4, exact",
        suite.len()
    );
}

/// All abelian groups of order at most `bound`, as invariant-factor chains.
fn groups_up_to(bound: i64) -> Vec<FpAbGroup> {
    fn rec(chain: &mut Vec<i64>, product: i64, bound: i64, out: &mut Vec<Vec<i64>>) {
        out.push(chain.clone());
        let last = chain.last().copied().unwrap_or(1);
        let mut d = if last <= 1 { 2 } else { last };
        while product * d <= bound {
            if last <= 1 || d % last == 0 {
                chain.push(d);
                rec(chain, product * d, bound, out);
                chain.pop();
            }
            d += if last <= 1 { 1 } else { last };
        }
    }
    let mut chains = Vec::new();
    rec(&mut Vec::new(), 1, bound, &mut chains);
    chains
        .into_iter()
        .map(|c| {
            let factors: Vec<BigInt> = c.iter().map(|&d| big(d)).collect();
            FpAbGroup::new(0, factors).unwrap()
        })
        .collect()
}

/// All automorphisms of `g` of multiplicative order at most `cap`, found by
/// enumerating every endomorphism matrix and powering it. (An endomorphism
/// with a power equal to the identity is automatically invertible.)
fn automorphisms_up_to_order(g: &FpAbGroup, cap: usize) -> Vec<(GroupHom, usize)> {
    let k = g.num_generators();
    if k == 0 {
        return vec![(GroupHom::identity(g), 1)];
    }
    let orders: Vec<i64> = (0..k)
        .map(|i| {
            let o = g.generator_order(i);
            i64::try_from(&o).expect("corpus orders fit i64")
        })
        .collect();
    // allowed entries at (i, j): multiples of d_i / gcd(d_i, d_j)
    let mut steps = vec![0i64; k * k];
    let mut counts = vec![0i64; k * k];
    for i in 0..k {
        for j in 0..k {
            let gcd = orders[i].gcd(&orders[j]);
            steps[i * k + j] = orders[i] / gcd;
            counts[i * k + j] = gcd;
        }
    }
    let mul = |a: &[i64], b: &[i64]| -> Vec<i64> {
        let mut c = vec![0i64; k * k];
        for i in 0..k {
            for l in 0..k {
                if a[i * k + l] == 0 {
                    continue;
                }
                for j in 0..k {
                    c[i * k + j] = (c[i * k + j] + a[i * k + l] * b[l * k + j]) % orders[i];
                }
            }
        }
        c
    };
    let is_identity = |a: &[i64]| -> bool {
        (0..k).all(|i| {
            (0..k).all(|j| {
                let want = if i == j { 1 % orders[i] } else { 0 };
                a[i * k + j] == want
            })
        })
    };
    let mut out = Vec::new();
    let mut odometer = vec![0i64; k * k];
    loop {
        let candidate: Vec<i64> = (0..k * k)
            .map(|p| (odometer[p] * steps[p]) % orders[p / k])
            .collect();
        // order by powering, capped
        let mut power = candidate.clone();
        let mut order = 1usize;
        while order <= cap && !is_identity(&power) {
            power = mul(&power, &candidate);
            order += 1;
        }
        if order <= cap && is_identity(&power) {
            let entries: Vec<BigInt> = candidate.iter().map(|&v| big(v)).collect();
            let hom = GroupHom::new(g.clone(), g.clone(), IntMatrix::from_vec(k, k, entries))
                .expect("candidate respects relations by construction");
            out.push((hom, order));
        }
        // advance
        let mut p = 0;
        loop {
            if p == k * k {
                return out;
            }
            odometer[p] += 1;
            if odometer[p] < counts[p] {
                break;
            }
            odometer[p] = 0;
            p += 1;
        }
    }
}

#[test]
fn criterion_06_tame_duality_and_bar_cohomology() {
    // exhaustive corpus: every abelian module of order <= 16, every
    // automorphism of order <= 6 (the acting cyclic group G = <sigma>)
    let mut duality_count = 0usize;
    let mut bar_count = 0usize;
    for module_group in groups_up_to(16) {
        if module_group.is_trivial() {
            continue;
        }
        let gens = module_group.num_generators();
        for (sigma, order) in automorphisms_up_to_order(&module_group, 6) {
            let m = MonogenicModule::new(module_group.clone(), sigma).unwrap();
            assert_eq!(m.order(), order);
            let (_pairing, perfect) = tame_duality_pairing(&m);
            assert!(
                perfect,
                "tame duality not perfect for {module_group} with sigma of order {order}"
            );
            // ker/coker swap under duality
            assert_eq!(
                m.h1().0.invariant_factors(),
                m.dual().h0().0.invariant_factors(),
                "coinvariants must match the dual invariants"
            );
            duality_count += 1;

            // bar cohomology versus the periodic resolution, gated by the
            // size of the degree-3 bar term (gens * order^3); the gate keeps
            // the single-generator part of the corpus fully exhaustive
            let affordable = match gens {
                0 | 1 => true,
                2 | 3 => order <= 4,
                _ => order <= 2,
            };
            if affordable {
                for r in 0..=2usize {
                    assert_eq!(
                        m.bar_cohomology(r).unwrap(),
                        m.periodic_cohomology(r).unwrap(),
                        "bar vs periodic for {module_group}, sigma order {order}, degree {r}"
                    );
                }
                bar_count += 1;
            }
        }
    }
    println!(
        "PASS 6: tame duality perfect on {duality_count} modules (|M| <= 16, |G| <= 6); bar = periodic in degrees 0-2 on {bar_count} of them, exact"
    );
}

fn random_cyclic_module(rng: &mut ChaCha8Rng) -> MonogenicModule {
    loop {
        let n = rng.gen_range(2..=12i64);
        let u = rng.gen_range(1..n);
        if big(u).gcd(&big(n)) != BigInt::one() {
            continue;
        }
        let m = MonogenicModule::cyclic_with_unit(n, u).unwrap();
        if m.order() <= 4 {
            return m;
        }
    }
}

fn random_bar_cochain(rng: &mut ChaCha8Rng, m: &MonogenicModule, degree: usize) -> BarCochain {
    let count = m.order().pow(degree as u32);
    let values: Vec<Vec<BigInt>> = (0..count)
        .map(|_| {
            (0..m.module().num_generators())
                .map(|_| big(rng.gen_range(0..24)))
                .collect()
        })
        .collect();
    BarCochain::new(m, degree, values).unwrap()
}

fn random_level_presheaf(rng: &mut ChaCha8Rng, n: usize) -> CoveringPresheaf {
    // groups chosen per level so path independence is automatic
    let group_pool = [
        FpAbGroup::cyclic(4),
        FpAbGroup::cyclic(6),
        FpAbGroup::cyclic(9),
        FpAbGroup::free(1),
        FpAbGroup::cyclic(8),
    ];
    loop {
        let groups: Vec<FpAbGroup> = (0..n)
            .map(|_| group_pool[rng.gen_range(0..group_pool.len())].clone())
            .collect();
        let mut maps = Vec::new();
        let mut ok = true;
        for w in groups.windows(2) {
            match random_hom(rng, &w[0], &w[1]) {
                Some(h) => maps.push(h),
                None => {
                    ok = false;
                    break;
                }
            }
        }
        if !ok {
            continue;
        }
        return CoveringPresheaf::by_levels(n, groups, maps).unwrap();
    }
}

/// A random well-defined homomorphism, built entrywise from the allowed
/// multiples.
fn random_hom(rng: &mut ChaCha8Rng, source: &FpAbGroup, target: &FpAbGroup) -> Option<GroupHom> {
    let rows = target.num_generators();
    let cols = source.num_generators();
    let mut m = IntMatrix::zero(rows, cols);
    for i in 0..rows {
        for j in 0..cols {
            let d_j = source.generator_order(j);
            let e_i = target.generator_order(i);
            let v = if d_j.is_zero() {
                // free source generator: anything goes
                big(rng.gen_range(-4..=4))
            } else if e_i.is_zero() {
                // torsion cannot hit a free generator
                BigInt::zero()
            } else {
                let d = i64::try_from(&d_j).ok()?;
                let e = i64::try_from(&e_i).ok()?;
                let g = d.gcd(&e);
                let step = e / g;
                big(step * rng.gen_range(0..g))
            };
            m.set(i, j, v);
        }
    }
    GroupHom::new(source.clone(), target.clone(), m).ok()
}

#[test]
fn criterion_07_cup_product_laws() {
    let mut rng = ChaCha8Rng::seed_from_u64(707);

    // 250 random bar cochains: the signed convention obeys
    // d(u∪v) = -(du∪v + (-1)^r u∪dv), cocycle∪cocycle is a cocycle, and
    // perturbing by a coboundary changes the product by an explicit
    // coboundary
    let mut bar_samples = 0usize;
    while bar_samples < 250 {
        let m = random_cyclic_module(&mut rng);
        let dual = m.dual();
        let (_, eval) = pontryagin_dual(m.module()).unwrap();
        let r = rng.gen_range(0..=1usize);
        let s = rng.gen_range(0..=(1 - r));
        let u = random_bar_cochain(&mut rng, &m, r);
        let v = random_bar_cochain(&mut rng, &dual, s);
        let lhs = aw_cup_bar(&m, &u, &dual, &v, &eval).unwrap().differential();
        let du_v = aw_cup_bar(&m, &u.differential(&m), &dual, &v, &eval).unwrap();
        let u_dv = aw_cup_bar(&m, &u, &dual, &v.differential(&dual), &eval).unwrap();
        let rhs = if r % 2 == 0 {
            du_v.add(&u_dv)
        } else {
            du_v.add(&u_dv.negate())
        };
        assert!(
            lhs.add(&rhs).is_zero(),
            "bar Leibniz (up to the global sign) failed"
        );
        // coboundaries are cocycles; their cups are cocycles
        let zu = random_bar_cochain(&mut rng, &m, 0).differential(&m);
        let zv = random_bar_cochain(&mut rng, &dual, 0).differential(&dual);
        let cup = aw_cup_bar(&m, &zu, &dual, &zv, &eval).unwrap();
        assert!(cup.is_cocycle(), "cocycle ∪ cocycle must be a cocycle");
        // class independence: for a cocycle zu, zu ∪ dw = ±d(zu ∪ w)
        let w = random_bar_cochain(&mut rng, &dual, 0);
        let prod_dw = aw_cup_bar(&m, &zu, &dual, &w.differential(&dual), &eval).unwrap();
        let d_prod = aw_cup_bar(&m, &zu, &dual, &w, &eval).unwrap().differential();
        assert!(
            prod_dw.add(&d_prod).is_zero() || prod_dw.add(&d_prod.negate()).is_zero(),
            "perturbation by a coboundary must change the product by a coboundary"
        );
        bar_samples += 1;
    }

    // 250 random Čech cochains: the signless convention obeys the plain
    // Leibniz rule
    let mut cech_samples = 0usize;
    while cech_samples < 250 {
        let n = rng.gen_range(2..=3usize);
        let f = random_level_presheaf(&mut rng, n);
        let g = random_level_presheaf(&mut rng, n);
        let r = rng.gen_range(0..=1usize);
        let s = rng.gen_range(0..=(1 - r));
        let a = random_cech_cochain(&mut rng, &f, r);
        let b = random_cech_cochain(&mut rng, &g, s);
        let (tensor, ab) = aw_cup_cech(&f, &a, &g, &b).unwrap();
        let lhs = ab.differential(&tensor.presheaf);
        let (_, da_b) = aw_cup_cech(&f, &a.differential(&f), &g, &b).unwrap();
        let (_, a_db) = aw_cup_cech(&f, &a, &g, &b.differential(&g)).unwrap();
        let rhs = if r % 2 == 0 {
            da_b.add(&tensor.presheaf, &a_db)
        } else {
            da_b.add(&tensor.presheaf, &a_db.negate(&tensor.presheaf))
        };
        assert_eq!(lhs, rhs, "Čech Leibniz rule failed");
        // cocycle ∪ cocycle
        let za = random_cech_cochain(&mut rng, &f, 0).differential(&f);
        let zb = random_cech_cochain(&mut rng, &g, 0).differential(&g);
        let (tensor2, cup) = aw_cup_cech(&f, &za, &g, &zb).unwrap();
        assert!(cup.is_cocycle(&tensor2.presheaf));
        cech_samples += 1;
    }

    // cohomology classes do not depend on the chosen cocycle representative
    let mut class_checks = 0usize;
    while class_checks < 10 {
        let n = 3;
        let f = random_level_presheaf(&mut rng, n);
        let g = random_level_presheaf(&mut rng, n);
        let a = random_cech_cochain(&mut rng, &f, 0).differential(&f);
        let b = random_cech_cochain(&mut rng, &g, 0);
        let zb = b.differential(&g);
        let perturbation = random_cech_cochain(&mut rng, &g, 0).differential(&g);
        let zb2 = zb.add(&g, &perturbation);
        let (tensor, cup1) = aw_cup_cech(&f, &a, &g, &zb).unwrap();
        let (_, cup2) = aw_cup_cech(&f, &a, &g, &zb2).unwrap();
        let cech = cech_complex(&tensor.presheaf, 2);
        assert_eq!(
            cech.class_of(&cup1),
            cech.class_of(&cup2),
            "cup class depends on the representative"
        );
        class_checks += 1;
    }

    println!(
        "PASS 7: Leibniz/cocycle/representative laws on {bar_samples} bar + {cech_samples} Čech random cochains (bar convention carries its global sign), exact"
    );
}

fn random_cech_cochain(
    rng: &mut ChaCha8Rng,
    f: &CoveringPresheaf,
    degree: usize,
) -> CechCochain {
    let n = f.index_count();
    let count = n.pow(degree as u32 + 1);
    // enumerate tuples in the same order as the library: odometer in base n
    let mut components = Vec::with_capacity(count);
    let mut tuple = vec![0usize; degree + 1];
    loop {
        let mask = tuple.iter().fold(0u32, |m, &i| m | (1 << i));
        let group = f.value(mask);
        components.push(
            (0..group.num_generators())
                .map(|_| big(rng.gen_range(-6..=6)))
                .collect::<Vec<BigInt>>(),
        );
        let mut p = degree + 1;
        loop {
            if p == 0 {
                return CechCochain::new(f, degree, components).unwrap();
            }
            p -= 1;
            tuple[p] += 1;
            if tuple[p] < n {
                break;
            }
            tuple[p] = 0;
            if p == 0 {
                return CechCochain::new(f, degree, components).unwrap();
            }
        }
    }
}

fn random_group(rng: &mut ChaCha8Rng) -> FpAbGroup {
    let len = rng.gen_range(0..=2usize);
    let orders: Vec<BigInt> = (0..len).map(|_| big(rng.gen_range(1..=9))).collect();
    let free = rng.gen_range(0..=1usize);
    FpAbGroup::from_orders(&orders, free)
}

fn random_complex(rng: &mut ChaCha8Rng) -> Complex {
    let lo = rng.gen_range(-1..=1i64);
    match rng.gen_range(0..3) {
        0 => Complex::concentrated(lo, random_group(rng)),
        1 => {
            let a = random_group(rng);
            let b = random_group(rng);
            let f = random_hom(rng, &a, &b).unwrap();
            Complex::new(lo, vec![a, b], vec![f]).unwrap()
        }
        _ => {
            // three terms with d∘d = 0 by factoring through the cokernel
            let a = random_group(rng);
            let b = random_group(rng);
            let f = random_hom(rng, &a, &b).unwrap();
            let (coker, proj) = f.cokernel();
            let c = random_group(rng);
            let h = random_hom(rng, &coker, &c).unwrap();
            let g = h.compose(&proj);
            Complex::new(lo, vec![a, b, c], vec![f, g]).unwrap()
        }
    }
}

#[test]
fn criterion_08_kunneth() {
    let mut rng = ChaCha8Rng::seed_from_u64(808);
    let mut verified = 0usize;
    for _ in 0..100 {
        let x = random_complex(&mut rng);
        let y = random_complex(&mut rng);
        let t = derived_tensor(&x, &y);
        let lo = t.lowest_degree() - 1;
        let hi = t.highest_degree() + 1;
        for s in lo..=hi {
            let report = kunneth_verify(&x, &y, s);
            assert!(
                report.order_identity_holds,
                "order identity |H^s| = |⊕H⊗H| * |⊕Tor1| failed at s = {s}"
            );
            assert!(
                report.injection_verified,
                "left Künneth term does not inject at s = {s}"
            );
            verified += 1;
        }
    }
    // Tor oracle table
    for a in 1..=30i64 {
        for b in 1..=30i64 {
            let t = tor1(&FpAbGroup::cyclic(a), &FpAbGroup::cyclic(b));
            let g = big(a).gcd(&big(b));
            assert_eq!(t, FpAbGroup::cyclic(g), "Tor1(Z/{a}, Z/{b})");
        }
    }
    println!(
        "PASS 8: Künneth order identity + injection at {verified} degrees of 100 random pairs; tor1 table up to 30, exact"
    );
}

#[test]
fn criterion_09_eval_diagram() {
    for q in 2..=64i64 {
        assert!(
            check_eval_diagram(&big(q)).unwrap(),
            "evaluation diagram does not commute at level {q}"
        );
    }
    println!("PASS 9: evaluation diagram commutes exhaustively for q = 2..=64, exact");
}

#[test]
fn criterion_10_duality_plumbing() {
    // double dual, elementwise, for every group of order <= 64
    let mut group_count = 0usize;
    for g in groups_up_to(64) {
        let (_, eval) = pontryagin_dual(&g).unwrap();
        let can = eval.adjoint();
        assert!(can.is_isomorphism(), "G -> G** not an isomorphism for {g}");
        let mut seen: Vec<Vec<BigInt>> = Vec::new();
        for x in g.elements() {
            let img = can.apply(&x);
            assert!(!seen.contains(&img), "double dual map collides on {g}");
            seen.push(img);
        }
        // Ext^1(G, Z) carries the same invariant factors as the dual
        let (ext, witness) = ext1_z(&g);
        assert_eq!(ext.invariant_factors(), g.invariant_factors());
        assert!(witness.is_isomorphism());
        group_count += 1;
    }

    // primary-component orthogonality for random bilinear pairings
    let mut rng = ChaCha8Rng::seed_from_u64(1010);
    let mut orthogonality_checks = 0usize;
    for _ in 0..30 {
        let g = groups_up_to(36)[rng.gen_range(1..groups_up_to(36).len())].clone();
        let h = groups_up_to(36)[rng.gen_range(1..groups_up_to(36).len())].clone();
        if g.is_trivial() || h.is_trivial() {
            continue;
        }
        // random bilinear table: values with denominators dividing the gcds
        let values: Vec<Vec<QModZ>> = (0..g.num_generators())
            .map(|i| {
                (0..h.num_generators())
                    .map(|j| {
                        let d = g.generator_order(i).gcd(&h.generator_order(j));
                        QModZ::new(big(rng.gen_range(0..12)), d)
                    })
                    .collect()
            })
            .collect();
        let pairing = BilinearPairing::new(g.clone(), h.clone(), values).unwrap();
        let element_order = |grp: &FpAbGroup, x: &[BigInt]| -> BigInt {
            let mut order = BigInt::one();
            for (i, c) in x.iter().enumerate() {
                let d = grp.generator_order(i);
                let o = &d / d.gcd(c);
                order = (&order * &o) / order.gcd(&o);
            }
            order
        };
        let primes_of = |n: &BigInt| -> Vec<BigInt> {
            primary_decomposition(&FpAbGroup::cyclic(n.clone()))
                .unwrap()
                .into_iter()
                .map(|(p, _)| p)
                .collect()
        };
        for a in g.elements() {
            let oa = element_order(&g, &a);
            let pa = primes_of(&oa);
            if pa.len() != 1 {
                continue;
            }
            for b in h.elements() {
                let ob = element_order(&h, &b);
                let pb = primes_of(&ob);
                if pb.len() != 1 || pa[0] == pb[0] {
                    continue;
                }
                assert!(
                    pairing.evaluate(&a, &b).is_zero(),
                    "elements of coprime prime-power order must pair to zero"
                );
                orthogonality_checks += 1;
            }
        }
    }
    println!(
        "PASS 10: double dual elementwise on {group_count} groups (|G| <= 64); Ext factors match; {orthogonality_checks} orthogonality pairs, exact"
    );
}

#[test]
fn criterion_11_cech_golden_values() {
    let z = FpAbGroup::free(1);
    let two_set = CoveringPresheaf::constant(2, z.clone());
    let cech = cech_complex(&two_set, 2);
    assert_eq!(cech.complex.cohomology(0), z);
    assert!(cech.complex.cohomology(1).is_trivial());

    let to_trivial = GroupHom::zero(&z, &FpAbGroup::trivial());
    let circle = CoveringPresheaf::by_levels(
        3,
        vec![z.clone(), z.clone(), FpAbGroup::trivial()],
        vec![GroupHom::identity(&z), to_trivial],
    )
    .unwrap();
    let cech = cech_complex(&circle, 2);
    assert_eq!(cech.complex.cohomology(0), z);
    assert_eq!(cech.complex.cohomology(1), z);
    println!("PASS 11: Čech golden values (contractible pair, circle nerve), exact");
}
