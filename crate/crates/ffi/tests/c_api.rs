use std::ffi::{c_char, CStr, CString};
use std::path::Path;
use std::process::Command;
use std::ptr;

use lincong_ffi::*;

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

/// Distinct-coordinate solutions by direct enumeration.
fn enumerate(coeffs: &[i64], b: i64, n: i64, distinct: bool) -> u64 {
    let k = coeffs.len();
    let mut x = vec![0i64; k];
    let mut total = 0;
    loop {
        let sum: i64 = coeffs.iter().zip(&x).map(|(a, v)| a * v).sum();
        let ok = (sum - b).rem_euclid(n) == 0;
        let unique = !distinct || (0..k).all(|i| (i + 1..k).all(|j| x[i] != x[j]));
        if ok && unique {
            total += 1;
        }
        let mut i = 0;
        while i < k {
            x[i] += 1;
            if x[i] < n {
                break;
            }
            x[i] = 0;
            i += 1;
        }
        if i == k {
            return total;
        }
    }
}

unsafe fn take(s: *mut c_char) -> String {
    assert!(!s.is_null());
    let out = CStr::from_ptr(s).to_str().unwrap().to_owned();
    lincong_string_free(s);
    out
}

unsafe fn last_error() -> String {
    let p = lincong_last_error_message();
    assert!(!p.is_null());
    CStr::from_ptr(p).to_str().unwrap().to_owned()
}

unsafe fn instance(coeffs: &[i64], b: i64, n: i64) -> *mut LincongInstance {
    let mut inst = ptr::null_mut();
    let st = lincong_instance_new(coeffs.as_ptr(), coeffs.len(), b, n, &mut inst);
    assert_eq!(st, LincongStatus::Ok);
    inst
}

unsafe fn count(
    inst: *const LincongInstance,
    method: LincongMethod,
) -> Result<String, LincongStatus> {
    let mut s = ptr::null_mut();
    match lincong_count(inst, method, &mut s) {
        LincongStatus::Ok => Ok(take(s)),
        st => Err(st),
    }
}

#[test]
fn count_matches_enumeration_for_every_method() {
    let methods = [
        LincongMethod::Auto,
        LincongMethod::IepEdges,
        LincongMethod::IepPartitions,
        LincongMethod::Brute,
    ];
    for n in 1..=7i64 {
        for coeffs in [
            vec![1i64],
            vec![1, 1],
            vec![2, 3],
            vec![1, 1, 3],
            vec![2, 2, 4],
        ] {
            for b in 0..n {
                let expected = enumerate(&coeffs, b, n, true).to_string();
                unsafe {
                    let inst = instance(&coeffs, b, n);
                    assert_eq!(lincong_instance_k(inst), coeffs.len());
                    for m in methods {
                        assert_eq!(
                            count(inst, m).as_deref(),
                            Ok(expected.as_str()),
                            "{coeffs:?} {b} {n} {m:?}"
                        );
                    }
                    let mut s = ptr::null_mut();
                    assert_eq!(lincong_lehmer_count(inst, &mut s), LincongStatus::Ok);
                    assert_eq!(take(s), enumerate(&coeffs, b, n, false).to_string());
                    lincong_instance_free(inst);
                }
            }
        }
    }
}

#[test]
fn formula_precondition_is_reported() {
    unsafe {
        let inst = instance(&[2, 2], 0, 4);
        assert_eq!(
            count(inst, LincongMethod::Formula),
            Err(LincongStatus::Precondition)
        );
        assert!(last_error().contains("subset {1}"));
        assert_eq!(count(inst, LincongMethod::Auto).as_deref(), Ok("4"));
        assert!(lincong_last_error_message().is_null());
        lincong_instance_free(inst);
    }
}

#[test]
fn resource_and_usage_errors() {
    unsafe {
        let coeffs: Vec<i64> = (1..=13).collect();
        let inst = instance(&coeffs, 7, 101);
        assert_eq!(
            count(inst, LincongMethod::IepEdges),
            Err(LincongStatus::Resource)
        );
        assert!(last_error().contains("k <= 5"));
        lincong_instance_free(inst);

        let mut inst = ptr::null_mut();
        let st = lincong_instance_new([1i64].as_ptr(), 1, 0, 0, &mut inst);
        assert_eq!(st, LincongStatus::Usage);
        assert!(inst.is_null());
        assert!(!last_error().is_empty());
    }
}

#[test]
fn null_arguments_are_rejected() {
    unsafe {
        let mut s = ptr::null_mut();
        assert_eq!(
            lincong_count(ptr::null(), LincongMethod::Auto, &mut s),
            LincongStatus::NullArgument
        );
        assert_eq!(
            lincong_instance_new(ptr::null(), 2, 0, 5, ptr::null_mut()),
            LincongStatus::NullArgument
        );
        assert_eq!(lincong_instance_k(ptr::null()), 0);
        assert!(!lincong_report_holds(ptr::null()));
        lincong_instance_free(ptr::null_mut());
        lincong_report_free(ptr::null_mut());
        lincong_string_free(ptr::null_mut());
    }
}

#[test]
fn decimal_constructor_handles_large_modulus() {
    let strs: Vec<CString> = ["3", "5", "11", "-19"]
        .iter()
        .map(|s| CString::new(*s).unwrap())
        .collect();
    let ptrs: Vec<*const c_char> = strs.iter().map(|s| s.as_ptr()).collect();
    let b = CString::new("0").unwrap();
    let n = CString::new("1000000007").unwrap();
    unsafe {
        let mut inst = ptr::null_mut();
        let st = lincong_instance_new_decimal(
            ptrs.as_ptr(),
            ptrs.len(),
            b.as_ptr(),
            n.as_ptr(),
            &mut inst,
        );
        assert_eq!(st, LincongStatus::Ok);
        assert_eq!(
            count(inst, LincongMethod::Formula).as_deref(),
            Ok("1000000015000000068000000084")
        );
        lincong_instance_free(inst);

        let bad = CString::new("12x").unwrap();
        let st = lincong_instance_new_decimal(
            ptrs.as_ptr(),
            ptrs.len(),
            bad.as_ptr(),
            n.as_ptr(),
            &mut inst,
        );
        assert_eq!(st, LincongStatus::Usage);
        assert!(last_error().contains("12x"));
    }
}

#[test]
fn condition_report_accessors() {
    unsafe {
        let inst = instance(&[2, 4], 0, 6);
        let mut report = ptr::null_mut();
        assert_eq!(
            lincong_check_condition(inst, &mut report),
            LincongStatus::Ok
        );
        assert!(!lincong_report_holds(report));
        assert!(lincong_report_divides_b(report));
        let mut s = ptr::null_mut();
        assert_eq!(
            lincong_report_full_sum_gcd(report, &mut s),
            LincongStatus::Ok
        );
        assert_eq!(take(s), "6");

        let mut len = 0usize;
        assert_eq!(
            lincong_report_failing_subset(report, ptr::null_mut(), 0, &mut len),
            LincongStatus::Resource
        );
        assert_eq!(len, 1);
        let mut buf = [usize::MAX; 4];
        assert_eq!(
            lincong_report_failing_subset(report, buf.as_mut_ptr(), buf.len(), &mut len),
            LincongStatus::Ok
        );
        assert_eq!(&buf[..len], &[0]);
        lincong_report_free(report);
        lincong_instance_free(inst);

        let inst = instance(&[1, 1, 3], 1, 5);
        assert_eq!(
            lincong_check_condition(inst, &mut report),
            LincongStatus::Ok
        );
        assert!(lincong_report_holds(report));
        assert!(!lincong_report_divides_b(report));
        assert_eq!(
            lincong_report_failing_subset(report, ptr::null_mut(), 0, &mut len),
            LincongStatus::Ok
        );
        assert_eq!(len, 0);
        lincong_report_free(report);
        lincong_instance_free(inst);
    }
}

#[test]
fn unit_sum_count_matches_enumeration() {
    for n in 1..=12i64 {
        let units: Vec<i64> = (0..n).filter(|&x| gcd(x, n) == 1).collect();
        for k in 1..=3usize {
            for b in 0..n {
                let mut expected = 0u64;
                let mut idx = vec![0usize; k];
                'outer: loop {
                    let sum: i64 = idx.iter().map(|&i| units[i]).sum();
                    if (sum - b).rem_euclid(n) == 0 {
                        expected += 1;
                    }
                    for slot in idx.iter_mut() {
                        *slot += 1;
                        if *slot < units.len() {
                            continue 'outer;
                        }
                        *slot = 0;
                    }
                    break;
                }
                let mut s = ptr::null_mut();
                unsafe {
                    assert_eq!(
                        lincong_rademacher_brauer_count(n, k, b, &mut s),
                        LincongStatus::Ok
                    );
                    assert_eq!(take(s), expected.to_string(), "n={n} k={k} b={b}");
                }
            }
        }
    }
}

#[test]
fn header_declares_every_export() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR"));
    let header = std::fs::read_to_string(dir.join("include/lincong.h")).unwrap();
    let source = std::fs::read_to_string(dir.join("src/lib.rs")).unwrap();
    let exports: Vec<&str> = source
        .lines()
        .filter_map(|l| l.split("extern \"C\" fn ").nth(1))
        .map(|rest| rest.split('(').next().unwrap())
        .collect();
    assert!(exports.len() >= 15);
    for name in exports {
        assert!(
            header.contains(&format!("{name}(")),
            "{name} missing from header"
        );
    }
}

#[test]
fn header_compiles_as_c() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR"));
    let out = std::env::temp_dir().join(format!("lincong_header_{}", std::process::id()));
    std::fs::create_dir_all(&out).unwrap();
    let src = out.join("probe.c");
    std::fs::write(
        &src,
        "#include \"lincong.h\"\nint probe(void) { LincongInstance *i = 0; return (int)lincong_instance_k(i) + LINCONG_STATUS_OK; }\n",
    )
    .unwrap();
    let status = match Command::new("cc")
        .args(["-std=c99", "-Wall", "-Werror", "-c"])
        .arg("-I")
        .arg(dir.join("include"))
        .arg(&src)
        .arg("-o")
        .arg(out.join("probe.o"))
        .status()
    {
        Ok(s) => s,
        Err(_) => {
            eprintln!("no C compiler found; skipping");
            return;
        }
    };
    assert!(status.success());
}
