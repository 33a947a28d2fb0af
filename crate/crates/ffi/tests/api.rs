use std::ffi::{CStr, CString};
use std::ptr;

use qdisynth_ffi::*;

fn last_error() -> String {
    let p = qdi_last_error_message();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_string()
}

fn function(text: &str) -> *mut QdiFunction {
    let text = CString::new(text).unwrap();
    let mut f = ptr::null_mut();
    assert_eq!(unsafe { qdi_function_from_text(text.as_ptr(), &mut f) }, QdiStatus::Ok);
    f
}

fn fixture(name: &str) -> *mut QdiNetlist {
    let name = CString::new(name).unwrap();
    let mut nl = ptr::null_mut();
    assert_eq!(unsafe { qdi_netlist_fixture(name.as_ptr(), 0, &mut nl) }, QdiStatus::Ok);
    nl
}

fn orphan_rows(nl: *const QdiNetlist, phase: QdiPhase) -> usize {
    let mut rows = usize::MAX;
    assert_eq!(unsafe { qdi_netlist_orphan_rows(nl, phase, &mut rows) }, QdiStatus::Ok);
    rows
}

#[test]
fn synthesized_and3_is_orphan_free_only_for_safe() {
    let f = function("n=3\n00000001\n");
    for (method, set_rows) in [(QdiMethod::Dims, 0), (QdiMethod::Fdims, 4), (QdiMethod::Safe, 0)] {
        let mut nl = ptr::null_mut();
        assert_eq!(unsafe { qdi_synthesize(f, method, 0, &mut nl) }, QdiStatus::Ok);
        assert_eq!(unsafe { qdi_netlist_inputs(nl) }, 3);
        assert_eq!(orphan_rows(nl, QdiPhase::Set), set_rows, "{method:?}");
        for a in 0..8u32 {
            let (mut r1, mut r0) = (false, false);
            assert_eq!(unsafe { qdi_netlist_eval(nl, a, &mut r1, &mut r0) }, QdiStatus::Ok);
            assert_eq!((r1, r0), (a == 7, a != 7));
        }
        unsafe { qdi_netlist_free(nl) };
    }
    unsafe { qdi_function_free(f) };
}

#[test]
fn fixtures_classify_and_report() {
    let fig4 = fixture("fig4");
    assert_eq!(orphan_rows(fig4, QdiPhase::Set), 4);
    let mut json = ptr::null_mut();
    assert_eq!(unsafe { qdi_netlist_orphans_json(fig4, &mut json) }, QdiStatus::Ok);
    let text = unsafe { CStr::from_ptr(json) }.to_str().unwrap().to_string();
    unsafe { qdi_string_free(json) };
    assert!(text.contains("\"OR1\""), "{text}");

    let mut class = QdiIoClass::Weak;
    assert_eq!(unsafe { qdi_netlist_classify(fig4, false, &mut class) }, QdiStatus::Ok);
    assert_eq!(class, QdiIoClass::Strong);
    unsafe { qdi_netlist_free(fig4) };

    let early = fixture("early-and2");
    assert_eq!(unsafe { qdi_netlist_classify(early, true, &mut class) }, QdiStatus::Ok);
    assert_eq!(class, QdiIoClass::Early);
    unsafe { qdi_netlist_free(early) };
}

#[test]
fn json_round_trip() {
    let fig5 = fixture("fig5");
    let mut json = ptr::null_mut();
    assert_eq!(unsafe { qdi_netlist_to_json(fig5, &mut json) }, QdiStatus::Ok);
    let mut back = ptr::null_mut();
    assert_eq!(unsafe { qdi_netlist_from_json(json, &mut back) }, QdiStatus::Ok);
    let mut again = ptr::null_mut();
    assert_eq!(unsafe { qdi_netlist_to_json(back, &mut again) }, QdiStatus::Ok);
    assert_eq!(unsafe { CStr::from_ptr(json) }, unsafe { CStr::from_ptr(again) });
    unsafe {
        qdi_string_free(json);
        qdi_string_free(again);
        qdi_netlist_free(fig5);
        qdi_netlist_free(back);
    }
}

#[test]
fn errors_are_reported() {
    let mut f = ptr::null_mut();
    assert_eq!(unsafe { qdi_function_from_text(ptr::null(), &mut f) }, QdiStatus::NullPointer);
    assert!(last_error().contains("text"));

    let bad = CString::new("n=2\n01\n").unwrap();
    assert_eq!(unsafe { qdi_function_from_text(bad.as_ptr(), &mut f) }, QdiStatus::Parse);
    assert!(f.is_null());

    let invalid = [0xffu8, 0];
    assert_eq!(unsafe { qdi_function_from_text(invalid.as_ptr().cast(), &mut f) }, QdiStatus::InvalidUtf8);

    assert_eq!(unsafe { qdi_function_from_bits(2, [0u8; 3].as_ptr(), 3, &mut f) }, QdiStatus::InvalidArgument);

    let c0 = function("n=2\n0000\n");
    let mut nl = ptr::null_mut();
    assert_eq!(unsafe { qdi_synthesize(c0, QdiMethod::Dims, 0, &mut nl) }, QdiStatus::Synthesis);
    assert!(last_error().contains("handshake"));
    assert_eq!(unsafe { qdi_synthesize(c0, QdiMethod::Dims, 1, &mut nl) }, QdiStatus::InvalidArgument);
    unsafe { qdi_function_free(c0) };

    let ghost = CString::new(r#"{"name":"x","inputs":[],"outputs":[],"nets":[],"gates":[]}"#).unwrap();
    let st = unsafe { qdi_netlist_from_json(ghost.as_ptr(), &mut nl) };
    assert!(matches!(st, QdiStatus::Parse | QdiStatus::Validation), "{st:?}");

    let name = CString::new("fig9").unwrap();
    assert_eq!(unsafe { qdi_netlist_fixture(name.as_ptr(), 0, &mut nl) }, QdiStatus::Parse);

    let fig3 = fixture("fig3");
    let (mut r1, mut r0) = (false, false);
    assert_eq!(unsafe { qdi_netlist_eval(fig3, 8, &mut r1, &mut r0) }, QdiStatus::InvalidArgument);
    assert_eq!(unsafe { qdi_netlist_eval(fig3, 0, ptr::null_mut(), &mut r0) }, QdiStatus::NullPointer);
    unsafe { qdi_netlist_free(fig3) };
}

#[test]
fn analysis_cap_is_an_error() {
    let bits = vec![1u8; 1 << 11];
    let mut f = ptr::null_mut();
    assert_eq!(unsafe { qdi_function_from_bits(11, bits.as_ptr(), bits.len(), &mut f) }, QdiStatus::Ok);
    let mut nl = ptr::null_mut();
    // constant-1 is rejected before any analysis
    assert_eq!(unsafe { qdi_synthesize(f, QdiMethod::Dims, 0, &mut nl) }, QdiStatus::Synthesis);
    unsafe { qdi_function_free(f) };

    let mut bits = vec![0u8; 1 << 11];
    *bits.last_mut().unwrap() = 1;
    assert_eq!(unsafe { qdi_function_from_bits(11, bits.as_ptr(), bits.len(), &mut f) }, QdiStatus::Ok);
    assert_eq!(unsafe { qdi_synthesize(f, QdiMethod::Safe, 0, &mut nl) }, QdiStatus::Ok);
    let mut rows = 0;
    assert_eq!(unsafe { qdi_netlist_orphan_rows(nl, QdiPhase::Set, &mut rows) }, QdiStatus::Analysis);
    assert!(last_error().contains("2^11 = 2048"), "{}", last_error());
    unsafe {
        qdi_netlist_free(nl);
        qdi_function_free(f);
    }
}
