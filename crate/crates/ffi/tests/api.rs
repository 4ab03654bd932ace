use std::ffi::{CStr, CString};
use std::ptr;

use trifocal_ffi::*;

fn last_error() -> String {
    unsafe { CStr::from_ptr(tf_last_error_message()) }.to_string_lossy().into_owned()
}

fn catalog(name: &str) -> *mut TfTensor {
    let n = CString::new(name).unwrap();
    let mut t = ptr::null_mut();
    assert_eq!(unsafe { tf_tensor_catalog(n.as_ptr(), &mut t) }, TfStatus::Ok);
    t
}

#[test]
fn membership_through_handles() {
    let nf = catalog("trifocal-11''");
    let f = catalog("F");
    let mut yes = false;
    unsafe {
        assert_eq!(tf_is_trifocal(nf, false, &mut yes), TfStatus::Ok);
        assert!(yes);
        assert_eq!(tf_is_trifocal(f, false, &mut yes), TfStatus::Ok);
        assert!(!yes);
        let mut r = [0u32; 3];
        assert_eq!(tf_tensor_prank(f, r.as_mut_ptr()), TfStatus::Ok);
        assert_eq!(r, [2, 2, 2]);
        assert_eq!(tf_tensor_frank(nf, r.as_mut_ptr()), TfStatus::Ok);
        assert_eq!(r, [3, 3, 3]);
        let mut s = ptr::null_mut();
        assert_eq!(tf_check_json(f, false, &mut s), TfStatus::Ok);
        let report = CStr::from_ptr(s).to_str().unwrap().to_string();
        tf_string_free(s);
        assert!(report.contains("\"is_trifocal\": false"));
        assert!(report.contains("P-Rank (2,2,2), too low"));
        tf_tensor_free(nf);
        tf_tensor_free(f);
    }
}

#[test]
fn json_round_trip_and_ints() {
    let nf = catalog("trifocal-11''");
    unsafe {
        let mut s = ptr::null_mut();
        assert_eq!(tf_tensor_to_json(nf, &mut s), TfStatus::Ok);
        let mut back = ptr::null_mut();
        assert_eq!(tf_tensor_from_json(s, &mut back), TfStatus::Ok);
        tf_string_free(s);
        let mut e = [0i64; 27];
        for (i, j, k) in [(0, 1, 0), (2, 0, 0), (1, 1, 1), (2, 2, 2)] {
            e[9 * i + 3 * j + k] = 1;
        }
        let mut from_ints = ptr::null_mut();
        assert_eq!(tf_tensor_from_ints(e.as_ptr(), &mut from_ints), TfStatus::Ok);
        let (mut a, mut b) = (ptr::null_mut(), ptr::null_mut());
        tf_tensor_to_json(back, &mut a);
        tf_tensor_to_json(from_ints, &mut b);
        assert_eq!(CStr::from_ptr(a), CStr::from_ptr(b));
        tf_string_free(a);
        tf_string_free(b);
        tf_tensor_free(back);
        tf_tensor_free(from_ints);
        tf_tensor_free(nf);
    }
}

#[test]
fn cameras() {
    let good = CString::new(
        r#"{"A1": [[1,0,0,0],[0,1,0,0],[0,0,1,0]], "A2": [[1,2,3,1],[0,1,"1/2",2],[3,0,1,-1]], "A3": [[2,1,0,1],[1,-1,4,0],[0,3,1,2]]}"#,
    )
    .unwrap();
    let shared = CString::new(
        r#"{"A1": [[1,0,0,0],[0,1,0,0],[0,0,1,0]], "A2": [[2,0,0,0],[0,1,0,0],[0,0,1,0]], "A3": [[2,1,0,1],[1,-1,4,0],[0,3,1,2]]}"#,
    )
    .unwrap();
    unsafe {
        let mut t = ptr::null_mut();
        assert_eq!(tf_tensor_from_cameras_json(good.as_ptr(), &mut t), TfStatus::Ok);
        let mut yes = false;
        tf_is_trifocal(t, false, &mut yes);
        assert!(yes);
        tf_tensor_free(t);
        let mut t = ptr::null_mut();
        assert_eq!(tf_tensor_from_cameras_json(shared.as_ptr(), &mut t), TfStatus::Degenerate);
        assert!(t.is_null());
        assert!(last_error().contains("focal point"));
    }
}

#[test]
fn error_codes() {
    unsafe {
        let mut t = ptr::null_mut();
        let bad = CString::new("[[1]]").unwrap();
        assert_eq!(tf_tensor_from_json(bad.as_ptr(), &mut t), TfStatus::Parse);
        assert!(!last_error().is_empty());
        assert_eq!(tf_tensor_from_json(ptr::null(), &mut t), TfStatus::NullPointer);
        let name = CString::new("no such orbit").unwrap();
        assert_eq!(tf_tensor_catalog(name.as_ptr(), &mut t), TfStatus::NotFound);
        let mut yes = false;
        assert_eq!(tf_is_trifocal(ptr::null(), false, &mut yes), TfStatus::NullPointer);
        let nf = catalog("F");
        assert_eq!(tf_is_trifocal(nf, false, ptr::null_mut()), TfStatus::NullPointer);
        assert_eq!(tf_tensor_to_json(nf, ptr::null_mut()), TfStatus::NullPointer);
        assert_eq!(tf_is_trifocal(nf, false, &mut yes), TfStatus::Ok);
        assert!(last_error().is_empty());
        tf_tensor_free(nf);
        tf_tensor_free(ptr::null_mut());
        tf_string_free(ptr::null_mut());
        let mut n = 0u64;
        assert_eq!(tf_hilbert(8, 101, 1, &mut n), TfStatus::InvalidArgument);
        assert_eq!(tf_hilbert(3, 100, 1, &mut n), TfStatus::InvalidArgument);
        assert!(CStr::from_ptr(tf_version()).to_str().unwrap().starts_with("0."));
    }
}

#[test]
fn graded_counts() {
    let mut n = 0u64;
    unsafe {
        assert_eq!(tf_generator_count(3, 101, 1, &mut n), TfStatus::Ok);
        assert_eq!(n, 10);
        assert_eq!(tf_hilbert(4, 101, 1, &mut n), TfStatus::Ok);
        assert_eq!(n, 27135);
    }
}
