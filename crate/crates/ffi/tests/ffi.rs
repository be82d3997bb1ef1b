use std::ffi::{CStr, CString};
use std::ptr;

use satlab_ffi::*;

fn cs(s: &str) -> CString {
    CString::new(s).unwrap()
}

unsafe fn take(s: *mut std::ffi::c_char) -> String {
    let out = CStr::from_ptr(s).to_str().unwrap().to_string();
    satlab_string_free(s);
    out
}

#[test]
fn graph_round_trip_and_checks() {
    unsafe {
        let mut g = ptr::null_mut();
        assert_eq!(satlab_graph_parse(cs("Dhc").as_ptr(), &mut g), SatlabStatus::Ok);
        let (mut n, mut e) = (0, 0);
        assert_eq!(satlab_graph_size(g, &mut n, &mut e), SatlabStatus::Ok);
        assert_eq!((n, e), (5, 5));
        let mut ok = false;
        assert_eq!(satlab_graph_check(g, 3, true, 0, &mut ok), SatlabStatus::Ok);
        assert!(ok);
        let mut s = ptr::null_mut();
        assert_eq!(satlab_graph_to_graph6(g, &mut s), SatlabStatus::Ok);
        assert_eq!(take(s), "Dhc");
        assert_eq!(satlab_graph_check(g, 2, false, 0, &mut ok), SatlabStatus::InvalidArgument);
        satlab_graph_free(g);
    }
}

#[test]
fn errors_set_status_and_message() {
    unsafe {
        let mut g = ptr::null_mut();
        assert_eq!(satlab_graph_parse(cs("D!c").as_ptr(), &mut g), SatlabStatus::ParseError);
        let msg = CStr::from_ptr(satlab_last_error()).to_str().unwrap();
        assert!(msg.contains("byte 1"), "{msg}");
        assert_eq!(satlab_graph_parse(ptr::null(), &mut g), SatlabStatus::NullPointer);
        assert_eq!(satlab_twin_free_saturated(6, 3, &mut g), SatlabStatus::Nonexistent);
        assert_eq!(satlab_twin_free_saturated(9, 3, &mut g), SatlabStatus::Ok);
        assert!(satlab_last_error().is_null());
        satlab_graph_free(g);
    }
}

#[test]
fn systems_through_handles() {
    unsafe {
        let mut s = ptr::null_mut();
        assert_eq!(satlab_system_family(2, 5, true, &mut s), SatlabStatus::Ok);
        let (mut valid, mut maximal) = (false, true);
        assert_eq!(satlab_system_check(s, &mut valid, &mut maximal), SatlabStatus::Ok);
        assert!(valid && !maximal);
        let mut json = ptr::null_mut();
        assert_eq!(satlab_system_to_json(s, &mut json), SatlabStatus::Ok);
        let text = take(json);
        let mut back = ptr::null_mut();
        assert_eq!(satlab_system_parse(cs(&text).as_ptr(), &mut back), SatlabStatus::Ok);
        let mut g = ptr::null_mut();
        assert_eq!(satlab_system_assemble(back, &mut g), SatlabStatus::Ok);
        let (mut n, mut e) = (0, 0);
        satlab_graph_size(g, &mut n, &mut e);
        assert_eq!(n, 6 + 2);
        satlab_graph_free(g);
        satlab_system_free(back);
        satlab_system_free(s);
    }
}

#[test]
fn search_entry_point() {
    unsafe {
        let mut out = ptr::null_mut();
        let st = satlab_search_json(cs("sat").as_ptr(), cs(r#"{"n": 5, "r": 3}"#).as_ptr(), &mut out);
        assert_eq!(st, SatlabStatus::Ok);
        let rec: serde_json::Value = serde_json::from_str(&take(out)).unwrap();
        assert_eq!(rec["value"], 4);
        let st = satlab_search_json(cs("nope").as_ptr(), cs("{}").as_ptr(), &mut out);
        assert_eq!(st, SatlabStatus::InvalidArgument);
        let st = satlab_search_json(cs("sat").as_ptr(), cs("{").as_ptr(), &mut out);
        assert_eq!(st, SatlabStatus::ParseError);
    }
}

#[test]
fn header_declares_entry_points() {
    let header = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/satlab.h")).unwrap();
    for name in ["satlab_graph_parse", "satlab_search_json", "SATLAB_STATUS_NONEXISTENT", "SatlabGraph"] {
        assert!(header.contains(name), "{name} missing from header");
    }
}
