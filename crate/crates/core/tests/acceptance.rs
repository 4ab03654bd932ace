//! One PASS/FAIL line per acceptance criterion.
//!
//! Criteria listed in `KNOWN_FAILURES` are computed in full and reported, but
//! do not fail the run; any other failure, or a known failure that starts
//! passing, exits non-zero.

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use trifocal::camera::{trifocal_from_cameras, CameraTriple};
use trifocal::ideal::{
    default_inventory, discover, graded_nonzerodivisor_check, hilbert_quotient, random_trifocal_points, DiscoverConfig,
    ModularInventory,
};
use trifocal::linalg::Field;
use trifocal::orbits::{
    all_vanish, degeneration_check, f_tensor, is_trifocal, is_trifocal_randomized, orbit17, orbit18, primed,
    random_tensor, sub_generic, Degeneration, ModuleTable,
};
use trifocal::poly::{f_det, m3_generators, witness_g, ModPoly, Monomial27, Poly27};
use trifocal::rep::{hw_space, kronecker, module_span, weyl_dim, IsotypicLabel, Partition};
use trifocal::tensor::{Axis, Tensor333};

/// Criteria that cannot hold as stated; see the README.
const KNOWN_FAILURES: &[&str] = &["4e", "4f", "7b"];

/// Wall-clock budgets for discovery over GF(101).
const BUDGET_THROUGH_5: Duration = Duration::from_secs(5 * 60);
const BUDGET_DEGREE_6: Duration = Duration::from_secs(2 * 60 * 60);

/// Fresh trifocal points for the vanishing certificates.
const FRESH_POINTS: usize = 200;
const FRESH_SEED: u64 = 0x00ac_ce97;

const SECOND_PRIME: u32 = 32003;

struct Report {
    lines: Vec<(String, bool)>,
}

impl Report {
    fn record(&mut self, id: &str, ok: bool, what: &str, detail: String) {
        println!("{} {id} {what}: {detail}", if ok { "PASS" } else { "FAIL" });
        self.lines.push((id.to_string(), ok));
    }

    fn skip(&self, id: &str, what: &str, why: &str) {
        println!("SKIP {id} {what}: {why}");
    }
}

fn label(s: &str) -> IsotypicLabel {
    IsotypicLabel::parse(s).unwrap()
}

fn label_table(inv: &ModularInventory, d: u32) -> Vec<(String, u64, usize)> {
    let mut v: Vec<_> = inv
        .degree(d)
        .map(|x| {
            x.labels
                .iter()
                .filter(|l| l.new_generators > 0)
                .map(|l| (l.label.to_string(), l.module_dim, l.new_generators))
                .collect()
        })
        .unwrap_or_default();
    v.sort();
    v
}

fn expected_table(entries: &[(&str, u64)]) -> Vec<(String, u64, usize)> {
    let mut v: Vec<_> = entries.iter().map(|(l, d)| (label(l).to_string(), *d, 1)).collect();
    v.sort();
    v
}

fn criterion_1(r: &mut Report) -> ModularInventory {
    let cfg = DiscoverConfig::default();
    let start = Instant::now();
    let low = discover(5, &cfg).unwrap();
    let t5 = start.elapsed();
    let start = Instant::now();
    let inv = discover(6, &cfg).unwrap();
    let t6 = start.elapsed();
    let counts = inv.counts();

    r.record(
        "1a",
        counts[&3] == 10 && label_table(&inv, 3) == expected_table(&[("111,111,3", 10)]),
        "degree 3 generators",
        format!("{} new, labels {:?}", counts[&3], label_table(&inv, 3)),
    );
    r.record("1b", counts[&4] == 0, "degree 4 generators", format!("{} new", counts[&4]));
    r.record(
        "1c",
        counts[&5] == 81 && label_table(&inv, 5) == expected_table(&[("221,221,311", 54), ("221,221,221", 27)]),
        "degree 5 generators",
        format!("{} new, labels {:?}", counts[&5], label_table(&inv, 5)),
    );
    let m6 = expected_table(&[
        ("411,33,222", 100),
        ("33,411,222", 100),
        ("33,33,222", 100),
        ("33,222,411", 100),
        ("33,321,321", 640),
        ("321,33,321", 640),
        ("33,222,33", 100),
        ("222,33,411", 100),
        ("222,33,33", 100),
    ]);
    r.record(
        "1d",
        counts[&6] == 1980 && label_table(&inv, 6) == m6,
        "degree 6 generators",
        format!("{} new from {} modules", counts[&6], label_table(&inv, 6).len()),
    );
    r.record(
        "1e",
        t5 <= BUDGET_THROUGH_5
            && t6 <= BUDGET_DEGREE_6
            && low.counts() == counts.range(..=5).map(|(a, b)| (*a, *b)).collect(),
        "discovery runtime over GF(101)",
        format!("through degree 5 in {t5:.2?}, through degree 6 in {t6:.2?}"),
    );
    inv
}

fn criterion_2(r: &mut Report, inv: &ModularInventory) {
    let expected = [27u64, 378, 3644, 27135, 166050, 865860];
    let got: Vec<u64> = (1..=6).map(|d| hilbert_quotient(&inv.generators, d, 6).unwrap()).collect();
    r.record("2a", got == expected, "Hilbert function degrees 1-6", format!("{got:?}"));
    let start = Instant::now();
    let h7 = hilbert_quotient(&inv.generators, 7, 7).unwrap();
    r.record("2b", h7 == 3_942_162, "Hilbert function degree 7 (stretch)", format!("{h7} in {:.2?}", start.elapsed()));
    r.skip("2c", "Hilbert function degrees 8-9 (stretch)", "beyond the hard degree cap of 7");
}

fn criterion_3(r: &mut Report) {
    let mut accepted = 0;
    for seed in 0..100 {
        let t = trifocal_from_cameras(&CameraTriple::random(1000 + seed)).unwrap();
        if is_trifocal(&t, false).is_trifocal && is_trifocal_randomized(&t, false, seed).is_trifocal {
            accepted += 1;
        }
    }
    r.record("3a", accepted == 100, "random camera triples accepted", format!("{accepted}/100"));

    let mut rejected = 0;
    for seed in 0..100 {
        let t = random_tensor(5000 + seed);
        let v = is_trifocal(&t, false);
        let w = is_trifocal_randomized(&t, true, seed);
        if !v.is_trifocal && v.reason == "P-Rank (3,3,3)" && !w.is_trifocal && w.reason == "P-Rank (3,3,3)" {
            rejected += 1;
        }
    }
    r.record("3b", rejected == 100, "random tensors rejected with P-Rank (3,3,3)", format!("{rejected}/100"));

    let v = is_trifocal(&f_tensor(), true);
    r.record(
        "3c",
        !v.is_trifocal && v.reason == "P-Rank (2,2,2), too low",
        "F rejected",
        format!("reason {:?}", v.reason),
    );

    let mut ok = 0;
    let mut total = 0;
    for (p, q, s) in [(2, 3, 3), (3, 2, 3), (3, 3, 2)] {
        for seed in 0..10 {
            total += 1;
            let t = sub_generic(p, q, s, 300 + seed).unwrap();
            let v = is_trifocal(&t, true);
            let deficient = t.frank().as_array().contains(&2);
            if !v.is_trifocal && deficient && v.reason == format!("P-Rank {}, too low", t.prank()) {
                ok += 1;
            }
        }
    }
    r.record("3d", ok == total, "subspace variety points rejected with P-Rank too low", format!("{ok}/{total}"));
}

fn module<'a>(table: &'a ModuleTable, l: &str) -> (&'a [Poly27], &'a [trifocal::poly::IntPoly]) {
    let l = label(l);
    let (_, p, i) = table.m6.iter().find(|(x, _, _)| *x == l).expect("degree 6 module present");
    (p, i)
}

fn criterion_4(r: &mut Report) {
    let start = Instant::now();
    let inv = default_inventory();
    let m3 = m3_generators(Axis::C);
    let m5 = inv.module_bases_of_degree(5);
    let m6 = inv.module_bases_of_degree(6);
    let table = ModuleTable::default_table();
    let built = start.elapsed();

    let start = Instant::now();
    let points = random_trifocal_points(FRESH_SEED, FRESH_POINTS);
    let all: Vec<&Poly27> = m3.iter().chain(&m5).chain(&m6).collect();
    let ints: Vec<_> = all.iter().map(|f| f.integer_form().expect("integer coefficients")).collect();
    let owned: Vec<Poly27> = all.iter().map(|f| (*f).clone()).collect();
    let mut vanish = 0;
    for t in &points {
        if all_vanish(&owned, &ints, t) {
            vanish += 1;
        }
    }
    let terms: usize = m6.iter().map(|f| f.len()).sum();
    r.record(
        "4a",
        vanish == FRESH_POINTS && (m3.len(), m5.len(), m6.len()) == (10, 81, 1980),
        "generators vanish exactly on fresh trifocal points",
        format!(
            "{} + {} + {} polynomials ({} degree 6 terms) zero at {vanish}/{FRESH_POINTS} points; modules in {built:.2?}, evaluation in {:.2?}",
            m3.len(),
            m5.len(),
            m6.len(),
            terms,
            start.elapsed()
        ),
    );

    let f = f_tensor();
    let nonzero_on_f = m5.iter().filter(|p| !p.evaluate(&f).unwrap().is_zero()).count();
    r.record("4b", nonzero_on_f > 0, "a degree 5 generator is nonzero on F", format!("{nonzero_on_f} of 81 nonzero"));

    let nonvanishing = |l: &str, t: &Tensor333| {
        let (p, i) = module(table, l);
        !all_vanish(p, i, t)
    };
    let pairings = [
        ("4c", "33,222,411", "17", orbit17()),
        ("4d", "222,33,411", "17'", primed(&orbit17(), 1)),
        ("4e", "33,33,222", "18'", primed(&orbit18(), 1)),
        ("4f", "222,33,33", "18''", primed(&orbit18(), 2)),
    ];
    for (id, l, name, t) in &pairings {
        r.record(
            id,
            nonvanishing(l, t),
            &format!("module {} nonvanishing on {name}", label(l)),
            format!("{}", nonvanishing(l, t)),
        );
    }

    let mut outside = Vec::new();
    for (name, t) in [
        ("17", orbit17()),
        ("17'", primed(&orbit17(), 1)),
        ("18", orbit18()),
        ("18'", primed(&orbit18(), 1)),
        ("18''", primed(&orbit18(), 2)),
    ] {
        let hit: Vec<String> =
            table.m6.iter().filter(|(_, p, i)| !all_vanish(p, i, &t)).map(|(l, _, _)| l.to_string()).collect();
        outside.push((name, hit));
    }
    r.record(
        "4g",
        outside.iter().all(|(_, h)| !h.is_empty()),
        "each of 17, 17', 18, 18', 18'' has a nonvanishing degree 6 module",
        format!("{outside:?}"),
    );
    let shifted = nonvanishing("33,33,222", &orbit18()) && nonvanishing("222,33,33", &primed(&orbit18(), 1));
    r.record("4h", shifted, "modules named for 18' and 18'' separate 18 and 18'", format!("{shifted}"));
}

fn criterion_5(r: &mut Report) {
    let start = Instant::now();
    let mut checked = 0;
    let mut bad = Vec::new();
    let mut labels: Vec<IsotypicLabel> = (1..=5).flat_map(IsotypicLabel::all).collect();
    labels.extend(
        [
            "411,33,222",
            "33,411,222",
            "33,33,222",
            "33,222,411",
            "33,321,321",
            "321,33,321",
            "33,222,33",
            "222,33,411",
            "222,33,33",
        ]
        .map(label),
    );
    for l in &labels {
        let k = kronecker(&l.lambda, &l.mu, &l.nu);
        let h = hw_space(l).unwrap();
        checked += 1;
        if h.dim() as u64 != k {
            bad.push(l.to_string());
        }
    }
    r.record(
        "5a",
        bad.is_empty(),
        "highest weight space dimension equals the Kronecker coefficient",
        format!("{checked} labels in {:.2?}, mismatches {bad:?}", start.elapsed()),
    );

    let mut sums = BTreeMap::new();
    for d in 1..=5u32 {
        let parts = Partition::all(d, 3);
        let mut s = 0u64;
        for a in &parts {
            for b in &parts {
                for c in &parts {
                    s += kronecker(a, b, c) * weyl_dim(a) * weyl_dim(b) * weyl_dim(c);
                }
            }
        }
        let ambient = trifocal::ideal::ambient_dim(d);
        sums.insert(d, (s, ambient));
    }
    r.record(
        "5b",
        sums.values().all(|(s, a)| s == a),
        "sum of Kronecker times Weyl dimensions equals dim S^d",
        format!("{sums:?}"),
    );

    let inv = default_inventory();
    let t = Poly27::monomial(Monomial27::var(0), trifocal::linalg::Scalar::from_i64(1, Field::Rational));
    let mut dims = vec![module_span(&t).unwrap().len()];
    for l in ["221,221,311", "33,222,411", "33,321,321"] {
        let i = inv.find(&label(l)).unwrap();
        dims.push(inv.module_basis(i).len());
    }
    r.record("5c", dims == [27, 54, 100, 640], "module spans have the Weyl dimensions", format!("{dims:?}"));
}

fn criterion_6(r: &mut Report) {
    for (id, p) in [("6a", trifocal::linalg::DEFAULT_PRIME), ("6b", SECOND_PRIME)] {
        let start = Instant::now();
        let inv = discover(6, &DiscoverConfig { prime: p, ..DiscoverConfig::default() }).unwrap();
        let f = graded_nonzerodivisor_check(&inv.generators, &ModPoly::from_poly(&f_det(), p).unwrap(), 7).unwrap();
        let g = graded_nonzerodivisor_check(&inv.generators, &ModPoly::from_poly(&witness_g(), p).unwrap(), 7).unwrap();
        let through =
            |rep: &trifocal::ideal::NzdReport, d: u32| rep.rows.iter().filter(|x| x.degree <= d).all(|x| x.holds);
        r.record(
            id,
            through(&f, 6) && through(&g, 6),
            &format!("determinant and degree 4 witnesses are non-zero-divisors through degree 6 mod {p}"),
            format!("f {}, g {}", through(&f, 6), through(&g, 6)),
        );
        r.record(
            &format!("{id}+"),
            f.verdict && g.verdict,
            &format!("same through degree 7 mod {p} (stretch)"),
            format!("f {}, g {} in {:.2?}", f.verdict, g.verdict, start.elapsed()),
        );
    }
}

fn criterion_7(r: &mut Report) {
    let a = degeneration_check(Degeneration::Orbit17);
    r.record(
        "7a",
        a.holds,
        "orbit 17 is a limit of the F orbit",
        format!("{} steps verified", a.steps.iter().filter(|s| s.verified).count()),
    );
    let b = degeneration_check(Degeneration::Orbit18);
    let illegal: Vec<&str> = b.steps.iter().filter(|s| !s.verified).map(|s| s.description.as_str()).collect();
    r.record(
        "7b",
        b.holds,
        "orbit 18 is a limit of the F orbit",
        format!(
            "closure of F has dimension {} but the tangent space of the cubics' zero set at 18 has dimension {} (orbit of 18 has dimension {}); unverifiable steps {illegal:?}",
            b.obstruction.source_dim, b.obstruction.tangent_dim, b.obstruction.target_dim
        ),
    );
}

fn main() -> ExitCode {
    let mut r = Report { lines: Vec::new() };
    let start = Instant::now();
    let inv = criterion_1(&mut r);
    criterion_2(&mut r, &inv);
    criterion_3(&mut r);
    criterion_4(&mut r);
    criterion_5(&mut r);
    criterion_6(&mut r);
    criterion_7(&mut r);

    let unexpected: Vec<&str> = r
        .lines
        .iter()
        .filter(|(id, ok)| *ok == KNOWN_FAILURES.contains(&id.as_str()))
        .map(|(id, _)| id.as_str())
        .collect();
    let passed = r.lines.iter().filter(|(_, ok)| *ok).count();
    println!(
        "acceptance: {passed}/{} passed in {:.2?}; known failures {KNOWN_FAILURES:?}; unexpected {unexpected:?}",
        r.lines.len(),
        start.elapsed()
    );
    if unexpected.is_empty() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
