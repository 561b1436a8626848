//! Acceptance criteria 1 to 10. Prints one PASS/FAIL line per criterion and
//! exits nonzero when any criterion fails.

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use hyperstp::appendix::{appendix_entries, verify_appendix, AppendixEntry, ErrataRegistry, Verdict};
use hyperstp::applications::{
    cross_product, gl2_bracket, gl2_fixture_discrepancies, ybe_residual, ybe_sides,
};
use hyperstp::contraction::{contract_bruteforce, contract_via_expression, onto_contract};
use hyperstp::expression::{
    convert_expression, matrix_expression, matrix_form_to_vec, sigma_transpose, sigma_transpose_via_perm,
    vc, vcs, vec_to_matrix_form, vr, vrs,
};
use hyperstp::io::print_delta;
use hyperstp::permutation::{build_perm_matrix, satisfies_defining_property};
use hyperstp::stp::{delta_i, mm_stp, mv_stp, vv_stp};
use hyperstp::{
    ContractionSpec, Hypermatrix, IndexTuple, Matrix, OntoMethod, Permutation, Shape, Side, YbeInstance,
    YbeMethod,
};

type Outcome = Result<String, String>;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn ints(r: &mut impl Rng, len: usize) -> Vec<i64> {
    (0..len).map(|_| r.gen_range(-9..=9)).collect()
}

fn hm(r: &mut impl Rng, dims: &[usize]) -> Hypermatrix<i64> {
    let shape = Shape::new(dims.to_vec()).unwrap();
    let data = ints(r, shape.size());
    Hypermatrix::from_flat(shape, data).unwrap()
}

fn mat(r: &mut impl Rng, rows: usize, cols: usize) -> Matrix<i64> {
    Matrix::new(rows, cols, ints(r, rows * cols)).unwrap()
}

fn rand_perm(r: &mut impl Rng, d: usize) -> Permutation {
    let mut image: Vec<usize> = (1..=d).collect();
    image.shuffle(r);
    Permutation::new(image).unwrap()
}

fn rand_dims(r: &mut impl Rng, max_order: usize, max_dim: usize) -> Vec<usize> {
    let d = r.gen_range(1..=max_order);
    (0..d).map(|_| r.gen_range(1..=max_dim)).collect()
}

fn tuple(axes: &[usize]) -> IndexTuple {
    IndexTuple::new(axes.to_vec()).unwrap()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(elapsed: Duration, limit_secs: u64) -> Result<(), String> {
    ensure(elapsed.as_secs() < limit_secs, || {
        format!("took {:.1}s, limit {limit_secs}s", elapsed.as_secs_f64())
    })
}

/// Tables exempt from exact reproduction under the literal reading of the
/// criterion: the tables A4(xiv) and A4(xv).
fn strictly_exempt(e: &AppendixEntry) -> bool {
    e.appendix == 4 && (e.label == 14 || e.label == 15)
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let entries = appendix_entries();
    let report = verify_appendix(&ErrataRegistry::embedded()).map_err(|e| e.to_string())?;

    let property_failures: Vec<String> = report
        .tables
        .iter()
        .filter(|t| !satisfies_defining_property(&t.entry.dims(), &t.entry.sigma, &t.generated).unwrap_or(false))
        .map(|t| t.entry.id())
        .collect();
    ensure(property_failures.is_empty(), || {
        format!("defining property fails for {}", property_failures.join(","))
    })?;
    ensure(report.is_success(), || {
        format!(
            "{} tables unexplained by the errata registry",
            report.count(Verdict::Mismatch) + report.orphaned.len()
        )
    })?;

    let mut strict_total = 0;
    let mut strict_failures = Vec::new();
    for e in entries.iter().filter(|e| matches!(e.appendix, 1 | 2 | 4)) {
        if strictly_exempt(e) {
            continue;
        }
        strict_total += 1;
        let generated = build_perm_matrix(&e.dims(), &e.sigma).map_err(|e| e.to_string())?;
        if print_delta(&generated) != print_delta(&e.table) {
            strict_failures.push(e.id());
        }
    }
    within(start.elapsed(), 30)?;

    if strict_failures.is_empty() {
        return Ok(format!(
            "{} tables, {} reproduced exactly, {} registered errata detected",
            report.tables.len(),
            report.count(Verdict::Pass),
            report.count(Verdict::ExpectedMismatch)
        ));
    }

    // Two printed tables with the same σ but opposite orientations show that
    // no single construction reproduces both.
    let witness = entries.iter().find_map(|a| {
        let wa = build_perm_matrix(&a.dims(), &a.sigma).ok()?;
        if wa != a.table || a.sigma == a.sigma.inverse() {
            return None;
        }
        entries.iter().find_map(|b| {
            let inverse = build_perm_matrix(&b.dims(), &b.sigma.inverse()).ok()?;
            (b.sigma == a.sigma && b.n != a.n && b.table == inverse).then(|| (a.id(), b.id(), a.sigma.to_string()))
        })
    });
    let reason = match witness {
        Some((a, b, s)) => format!(
            "{a} prints W^{s} while {b} prints W^{{{s}^-1}}, so no single construction reproduces both"
        ),
        None => "no orientation conflict found".to_string(),
    };
    Err(format!(
        "{}/{} A1/A2/A4 tables outside A4(xiv),A4(xv) reproduced exactly; differing: {}; {reason}; \
         with the errata registry all {} tables verify ({} EXPECTED-MISMATCH, 0 MISMATCH)",
        strict_total - strict_failures.len(),
        strict_total,
        strict_failures.join(","),
        report.tables.len(),
        report.count(Verdict::ExpectedMismatch)
    ))
}

fn criterion_2() -> Outcome {
    let printed: [(&[usize], &[usize]); 6] = [
        (&[1, 2, 3], &[1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14, 15, 16, 17, 18, 19, 20, 21, 22, 23, 24, 25, 26, 27, 28, 29, 30]),
        (&[1, 3, 2], &[1, 4, 7, 10, 13, 2, 5, 8, 11, 14, 3, 6, 9, 12, 15, 16, 19, 22, 25, 28, 17, 20, 23, 26, 29, 18, 21, 24, 27, 30]),
        (&[2, 1, 3], &[1, 2, 3, 4, 5, 11, 12, 13, 14, 15, 21, 22, 23, 24, 25, 6, 7, 8, 9, 10, 16, 17, 18, 19, 20, 26, 27, 28, 29, 30]),
        (&[2, 3, 1], &[1, 3, 5, 7, 9, 11, 13, 15, 17, 19, 21, 23, 25, 27, 29, 2, 4, 6, 8, 10, 12, 14, 16, 18, 20, 22, 24, 26, 28, 30]),
        (&[3, 1, 2], &[1, 7, 13, 19, 25, 2, 8, 14, 20, 26, 3, 9, 15, 21, 27, 4, 10, 16, 22, 28, 5, 11, 17, 23, 29, 6, 12, 18, 24, 30]),
        (&[3, 2, 1], &[1, 7, 13, 19, 25, 3, 9, 15, 21, 27, 5, 11, 17, 23, 29, 2, 8, 14, 20, 26, 4, 10, 16, 22, 28, 6, 12, 18, 24, 30]),
    ];
    let dims = Shape::new(vec![2, 3, 5]).unwrap();
    for (sigma, cols) in printed {
        let w = build_perm_matrix(&dims, &Permutation::new(sigma.to_vec()).unwrap()).unwrap();
        ensure(w.cols() == cols, || format!("sigma {sigma:?} gives {}", print_delta(&w)))?;
    }
    Ok("all six W^sigma_[2,3,5] match, W^sigma1 = I_30".into())
}

fn criterion_3() -> Outcome {
    let start = Instant::now();
    let mut r = rng(301);
    for case in 0..200 {
        let da = r.gen_range(1..=4);
        let db = r.gen_range(1..=4);
        let s = r.gen_range(0..=da.min(db));
        let a_dims: Vec<usize> = (0..da).map(|_| r.gen_range(1..=4)).collect();
        let a_axes = rand_perm(&mut r, da).image()[..s].to_vec();
        let b_axes = rand_perm(&mut r, db).image()[..s].to_vec();
        let mut b_dims: Vec<usize> = (0..db).map(|_| r.gen_range(1..=4)).collect();
        for (&x, &y) in a_axes.iter().zip(&b_axes) {
            b_dims[y - 1] = a_dims[x - 1];
        }
        let (a, b) = (hm(&mut r, &a_dims), hm(&mut r, &b_dims));
        let spec = ContractionSpec::new(a_axes, b_axes).unwrap();
        let brute = contract_bruteforce(&a, &b, &spec).map_err(|e| e.to_string())?;
        ensure(contract_via_expression(&a, &b, &spec).map_err(|e| e.to_string())? == brute, || {
            format!("(a) case {case}")
        })?;
    }
    for case in 0..200 {
        let dims = rand_dims(&mut r, 4, 4);
        let a = hm(&mut r, &dims);
        let rs: Vec<usize> = (1..=dims.len()).filter(|_| r.gen_bool(0.5)).collect();
        let rs = tuple(&rs);
        let b = hm(&mut r, a.shape().select(rs.axes()).dims());
        let spec = ContractionSpec::new(rs.axes().to_vec(), (1..=rs.len()).collect::<Vec<_>>()).unwrap();
        let brute = contract_bruteforce(&a, &b, &spec).unwrap();
        let expr = onto_contract(&a, &b, &rs, OntoMethod::Expression).map_err(|e| e.to_string())?;
        let stp = onto_contract(&a, &b, &rs, OntoMethod::Stp).map_err(|e| e.to_string())?;
        ensure(expr == brute && stp == brute, || format!("(b) case {case}"))?;
    }
    for case in 0..200 {
        let dims = rand_dims(&mut r, 5, 4);
        let a = hm(&mut r, &dims);
        let sigma = rand_perm(&mut r, dims.len());
        ensure(
            sigma_transpose_via_perm(&a, &sigma).unwrap() == sigma_transpose(&a, &sigma).unwrap(),
            || format!("(c) case {case}"),
        )?;
    }
    let mut conversions = 0;
    for case in 0..200 {
        let dims = rand_dims(&mut r, 4, 4);
        let a = hm(&mut r, &dims);
        let d = dims.len();
        let subsets: Vec<IndexTuple> = (0u32..1 << d)
            .map(|m| tuple(&(1..=d).filter(|k| m & (1 << (k - 1)) != 0).collect::<Vec<_>>()))
            .collect();
        for rows in &subsets {
            let direct = matrix_expression(&a, rows, &rows.complement(d)).unwrap();
            let via = vec_to_matrix_form(a.as_slice(), a.shape(), rows).unwrap();
            ensure(via == direct, || format!("(d) case {case} rows {rows}"))?;
            ensure(matrix_form_to_vec(&direct).unwrap() == a.as_slice(), || {
                format!("(d) case {case} back from {rows}")
            })?;
            let target = &subsets[r.gen_range(0..subsets.len())];
            let expected = matrix_expression(&a, target, &target.complement(d)).unwrap();
            ensure(convert_expression(&direct, target).unwrap() == expected, || {
                format!("(d) case {case} {rows} -> {target}")
            })?;
            conversions += 1;
        }
    }
    within(start.elapsed(), 60)?;
    Ok(format!("4 x 200 cases, {conversions} partition conversions, 0 failures"))
}

fn criterion_4() -> Outcome {
    let mut r = rng(401);
    let dim = |r: &mut ChaCha8Rng| r.gen_range(1..=6);
    let add = |a: &Matrix<i64>, b: &Matrix<i64>| a.try_add(b).unwrap();
    let addv = |x: &[i64], y: &[i64]| x.iter().zip(y).map(|(a, b)| a + b).collect::<Vec<_>>();
    for case in 0..200 {
        let a = { let (m, n) = (dim(&mut r), dim(&mut r)); mat(&mut r, m, n) };
        let b = { let (m, n) = (dim(&mut r), dim(&mut r)); mat(&mut r, m, n) };
        let c = { let (m, n) = (dim(&mut r), dim(&mut r)); mat(&mut r, m, n) };
        let x = { let k = dim(&mut r); ints(&mut r, k) };
        ensure(
            mm_stp(&mm_stp(&a, &b).unwrap(), &c).unwrap() == mm_stp(&a, &mm_stp(&b, &c).unwrap()).unwrap(),
            || format!("M-M associativity case {case}"),
        )?;
        ensure(
            mv_stp(&mm_stp(&a, &b).unwrap(), &x).unwrap() == mv_stp(&a, &mv_stp(&b, &x).unwrap()).unwrap(),
            || format!("M-V associativity case {case}"),
        )?;
    }
    for case in 0..200 {
        let (m, n) = (dim(&mut r), dim(&mut r));
        let (a, b) = (mat(&mut r, m, n), mat(&mut r, m, n));
        let c = { let (p, q) = (dim(&mut r), dim(&mut r)); mat(&mut r, p, q) };
        let k = dim(&mut r);
        let (x, y) = (ints(&mut r, k), ints(&mut r, k));
        let z = { let k = dim(&mut r); ints(&mut r, k) };
        let (ab, xy) = (add(&a, &b), addv(&x, &y));
        let checks = [
            mm_stp(&ab, &c).unwrap() == add(&mm_stp(&a, &c).unwrap(), &mm_stp(&b, &c).unwrap()),
            mm_stp(&c, &ab).unwrap() == add(&mm_stp(&c, &a).unwrap(), &mm_stp(&c, &b).unwrap()),
            mv_stp(&ab, &x).unwrap() == addv(&mv_stp(&a, &x).unwrap(), &mv_stp(&b, &x).unwrap()),
            mv_stp(&a, &xy).unwrap() == addv(&mv_stp(&a, &x).unwrap(), &mv_stp(&a, &y).unwrap()),
            vv_stp(&xy, &z).unwrap() == vv_stp(&x, &z).unwrap() + vv_stp(&y, &z).unwrap(),
            vv_stp(&z, &xy).unwrap() == vv_stp(&z, &x).unwrap() + vv_stp(&z, &y).unwrap(),
        ];
        if let Some(k) = checks.iter().position(|ok| !ok) {
            return Err(format!("distributivity identity {} fails in case {case}", k + 1));
        }
    }
    for case in 0..100 {
        let (m, n, q) = (dim(&mut r), dim(&mut r), dim(&mut r));
        let (a, b, x) = (mat(&mut r, m, n), mat(&mut r, n, q), ints(&mut r, n));
        ensure(
            mm_stp(&a, &b).unwrap() == a.matmul(&b).unwrap() && mv_stp(&a, &x).unwrap() == a.matvec(&x).unwrap(),
            || format!("reduction case {case}"),
        )?;
    }
    Ok("associativity 2 x 200, six distributivity identities x 200, reduction x 100".into())
}

fn criterion_5() -> Outcome {
    let mut r = rng(501);
    for case in 0..100 {
        let (m, n, p, q) = (r.gen_range(1..=6), r.gen_range(1..=6), r.gen_range(1..=6), r.gen_range(1..=6));
        let a = mat(&mut r, m, n);
        let x = mat(&mut r, n, q);
        let y = mat(&mut r, p, m);
        let col = |v: &[i64]| Matrix::column(v);
        ensure(vr(&a.matmul(&x).unwrap()) == mm_stp(&a, &col(&vr(&x))).unwrap().into_vec(), || {
            format!("row stacking of a product, case {case}")
        })?;
        ensure(
            vc(&y.matmul(&a).unwrap()) == mm_stp(&a.transpose(), &col(&vc(&y))).unwrap().into_vec(),
            || format!("column stacking of a product, case {case}"),
        )?;
        ensure(mm_stp(&a, &col(&delta_i(n))).unwrap().into_vec() == vr(&a), || {
            format!("row stacking through delta_I, case {case}")
        })?;
        ensure(mm_stp(&a.transpose(), &col(&delta_i(m))).unwrap().into_vec() == vc(&a), || {
            format!("column stacking through delta_I, case {case}")
        })?;
        ensure(vrs(&vr(&a), n).unwrap() == a && vcs(&vc(&a), m).unwrap() == a, || {
            format!("unstacking, case {case}")
        })?;
    }
    Ok("five stacking identities x 100".into())
}

fn criterion_6() -> Outcome {
    let mut r = rng(601);
    let mut worst = 0.0f64;
    for _ in 0..100 {
        let x: Vec<f64> = (0..3).map(|_| r.gen_range(-10.0..10.0)).collect();
        let y: Vec<f64> = (0..3).map(|_| r.gen_range(-10.0..10.0)).collect();
        let got = cross_product(&x, &y).map_err(|e| e.to_string())?;
        let expected = [
            x[1] * y[2] - x[2] * y[1],
            x[2] * y[0] - x[0] * y[2],
            x[0] * y[1] - x[1] * y[0],
        ];
        for (a, b) in got.iter().zip(expected) {
            worst = worst.max((a - b).abs());
        }
    }
    ensure(worst <= 1e-12, || format!("max abs error {worst:e}"))?;
    Ok(format!("100 cases, max abs error {worst:e}"))
}

fn criterion_7() -> Outcome {
    let mut r = rng(701);
    for case in 0..100 {
        let x = mat(&mut r, 2, 2);
        let y = mat(&mut r, 2, 2);
        let expected = x.matmul(&y).unwrap().try_sub(&y.matmul(&x).unwrap()).unwrap();
        ensure(gl2_bracket(&x, &y).map_err(|e| e.to_string())? == expected, || format!("case {case}"))?;
    }
    let columns: Vec<String> = gl2_fixture_discrepancies().iter().map(|d| d.column.to_string()).collect();
    Ok(format!(
        "100 pairs exact; printed structure list deviates in columns {} (documented fixture erratum)",
        columns.join(",")
    ))
}

fn criterion_8() -> Outcome {
    let mut r = rng(801);
    for n in [2, 3] {
        for case in 0..20 {
            let inst = YbeInstance::new(hm(&mut r, &[n, n, n, n])).map_err(|e| e.to_string())?;
            for side in [Side::Lhs, Side::Rhs] {
                let brute = ybe_sides(&inst, side, YbeMethod::BruteForce).map_err(|e| e.to_string())?;
                let matrix = ybe_sides(&inst, side, YbeMethod::Matrix).map_err(|e| e.to_string())?;
                ensure(brute == matrix, || format!("N={n} case {case} {side:?}"))?;
            }
        }
    }
    let zero = YbeInstance::new(Hypermatrix::<i64>::zeros(Shape::new(vec![2; 4]).unwrap())).unwrap();
    let residual = ybe_residual(&zero).map_err(|e| e.to_string())?;
    ensure(residual == 0.0, || format!("zero instance residual {residual}"))?;
    Ok("N=2,3 x 20 instances, both sides exact; zero instance residual 0".into())
}

fn criterion_9() -> Outcome {
    let mut r = rng(901);
    for case in 0..50 {
        let a = hm(&mut r, &[2, 3, 4]);
        let b = hm(&mut r, &[4, 5, 3]);
        let c = contract_bruteforce(&a, &b, &ContractionSpec::new(vec![2, 3], vec![3, 1]).unwrap()).unwrap();
        let ma = matrix_expression(&a, &tuple(&[1]), &tuple(&[2, 3])).unwrap();
        let mb = matrix_expression(&b, &tuple(&[3, 1]), &tuple(&[2])).unwrap();
        let mc = ma.matrix().matmul(mb.matrix()).unwrap();
        ensure(mc.shape() == (2, 5) && mc.as_slice() == c.as_slice(), || format!("case {case}"))?;
    }
    // symbolic fill: entry value encodes its own index
    let code = |j: &[usize]| (100 * j[0] + 10 * j[1] + j[2]) as i64;
    let a = Hypermatrix::from_fn(Shape::new(vec![2, 3, 4]).unwrap(), code);
    let b = Hypermatrix::from_fn(Shape::new(vec![4, 5, 3]).unwrap(), code);
    let ma = matrix_expression(&a, &tuple(&[1]), &tuple(&[2, 3])).unwrap();
    for i1 in 1..=2 {
        for i2 in 1..=3 {
            for i3 in 1..=4 {
                let got = ma.matrix().get(i1, (i2 - 1) * 4 + i3).unwrap();
                ensure(got == code(&[i1, i2, i3]), || format!("M_A({i1},({i2},{i3})) = {got}"))?;
            }
        }
    }
    let mb = matrix_expression(&b, &tuple(&[3, 1]), &tuple(&[2])).unwrap();
    ensure(mb.matrix().shape() == (12, 5), || "M_B shape".into())?;
    let entry = mb.matrix().get(2, 3).unwrap();
    ensure(entry == code(&[2, 3, 1]), || format!("M_B(2,3) = {entry}, expected b at j1=2 j2=3 j3=1"))?;
    Ok("50 random fills exact; M_A and M_B layouts match, M_B(2,3) = b_{j1=2,j2=3,j3=1}".into())
}

fn criterion_10() -> Outcome {
    let bin = env!("CARGO_BIN_EXE_hyperstp");
    let verify = Command::new(bin).arg("verify-appendix").output().map_err(|e| e.to_string())?;
    ensure(verify.status.code() == Some(0), || format!("verify-appendix exited {:?}", verify.status.code()))?;
    let permmat = Command::new(bin)
        .args(["permmat", "--dims", "2,2,2", "--sigma", "2,3,1"])
        .output()
        .map_err(|e| e.to_string())?;
    let text = String::from_utf8_lossy(&permmat.stdout);
    ensure(permmat.status.code() == Some(0) && text == "d8[1,3,5,7,2,4,6,8]\n", || {
        format!("permmat printed {text:?}")
    })?;
    Ok("verify-appendix exits 0; permmat prints d8[1,3,5,7,2,4,6,8]".into())
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("appendix reproduction", criterion_1),
        ("W^sigma_[2,3,5] matrices", criterion_2),
        ("oracle equivalence", criterion_3),
        ("STP algebra", criterion_4),
        ("stacking identities", criterion_5),
        ("cross product", criterion_6),
        ("gl(2) bracket", criterion_7),
        ("Yang-Baxter derivation", criterion_8),
        ("order-3 contraction pipeline", criterion_9),
        ("CLI determinism", criterion_10),
    ];
    let mut failed = 0;
    for (k, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = check();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS criterion {:>2} {name} ({secs:.2}s): {detail}", k + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL criterion {:>2} {name} ({secs:.2}s): {detail}", k + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
