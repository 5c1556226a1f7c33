use ringlrc::codes::tamo_barg_from_subgroup;
use ringlrc::json::spec_to_string;
use ringlrc::ring::GaloisRing;
use ringlrc_capi::{
    lrc_analyze_json, lrc_code_free, lrc_code_from_json, lrc_code_k, lrc_code_n,
    lrc_code_symbol_width, lrc_encode, lrc_recover, lrc_status_name, lrc_string_free, LrcCode,
    LrcStatus,
};
use std::ffi::{CStr, CString};
use std::ptr;

fn open(doc: &str) -> *mut LrcCode {
    let doc = CString::new(doc).unwrap();
    let mut handle: *mut LrcCode = ptr::null_mut();
    let status = unsafe { lrc_code_from_json(doc.as_ptr(), &mut handle) };
    assert_eq!(status, LrcStatus::Ok);
    assert!(!handle.is_null());
    handle
}

#[test]
fn encode_and_repair_through_the_c_interface() {
    let ring = GaloisRing::new(11, 2, 1, None).unwrap();
    let spec = tamo_barg_from_subgroup(&ring, 5, 2).unwrap();
    let handle = open(&spec_to_string(&spec));
    unsafe {
        assert_eq!(lrc_code_n(handle), 10);
        assert_eq!(lrc_code_k(handle), 8);
        assert_eq!(lrc_code_symbol_width(handle), 1);

        let message: Vec<u64> = vec![1, 0, 3, 7, 0, 0, 11, 1];
        let mut word = vec![0u64; 10];
        assert_eq!(
            lrc_encode(handle, message.as_ptr(), 8, word.as_mut_ptr(), 10),
            LrcStatus::Ok
        );
        assert_eq!(word, vec![23, 113, 6, 33, 72, 114, 116, 106, 7, 25]);

        let expected = word.clone();
        word[4] = 0;
        let flags: Vec<u8> = (0..10).map(|j| u8::from(j == 4)).collect();
        assert_eq!(
            lrc_recover(handle, word.as_mut_ptr(), 10, flags.as_ptr(), 10),
            LrcStatus::Ok
        );
        assert_eq!(word, expected);

        // two erasures in one block exceed the designed tolerance
        let flags: Vec<u8> = (0..10).map(|j| u8::from(j <= 1)).collect();
        assert_eq!(
            lrc_recover(handle, word.as_mut_ptr(), 10, flags.as_ptr(), 10),
            LrcStatus::UnrecoverablePattern
        );

        // wrong buffer lengths are rejected before anything runs
        assert_eq!(
            lrc_encode(handle, message.as_ptr(), 7, word.as_mut_ptr(), 10),
            LrcStatus::BufferSize
        );
        // coefficients at or above p^s are rejected
        let bad: Vec<u64> = vec![121, 0, 0, 0, 0, 0, 0, 0];
        assert_eq!(
            lrc_encode(handle, bad.as_ptr(), 8, word.as_mut_ptr(), 10),
            LrcStatus::Domain
        );
        lrc_code_free(handle);
    }
}

#[test]
fn analyze_returns_a_json_report() {
    let ring = GaloisRing::new(5, 2, 1, None).unwrap();
    let spec = tamo_barg_from_subgroup(&ring, 2, 2).unwrap();
    let handle = open(&spec_to_string(&spec));
    unsafe {
        let mut text: *mut std::ffi::c_char = ptr::null_mut();
        assert_eq!(lrc_analyze_json(handle, 10_000_000, &mut text), LrcStatus::Ok);
        let report: serde_json::Value =
            serde_json::from_str(CStr::from_ptr(text).to_str().unwrap()).unwrap();
        assert_eq!(report["K"], 2);
        assert_eq!(report["d_brute"], 2);
        lrc_string_free(text);

        // a cap of 1 refuses the 625-codeword enumeration
        let mut text: *mut std::ffi::c_char = ptr::null_mut();
        assert_eq!(lrc_analyze_json(handle, 1, &mut text), LrcStatus::TooLarge);
        assert!(text.is_null());
        lrc_code_free(handle);
    }
}

#[test]
fn error_paths_and_names() {
    unsafe {
        let mut handle: *mut LrcCode = ptr::null_mut();
        let bad = CString::new("{not json").unwrap();
        assert_eq!(lrc_code_from_json(bad.as_ptr(), &mut handle), LrcStatus::Parse);
        assert!(handle.is_null());

        // a structurally valid document with impossible parameters
        let ring = GaloisRing::new(11, 2, 1, None).unwrap();
        let spec = tamo_barg_from_subgroup(&ring, 5, 2).unwrap();
        let tampered = spec_to_string(&spec).replace("\"t\": 2", "\"t\": 3");
        let doc = CString::new(tampered).unwrap();
        assert_eq!(lrc_code_from_json(doc.as_ptr(), &mut handle), LrcStatus::Domain);

        assert_eq!(lrc_code_from_json(ptr::null(), &mut handle), LrcStatus::NullPointer);
        assert_eq!(lrc_code_n(ptr::null()), 0);

        assert_eq!(
            CStr::from_ptr(lrc_status_name(LrcStatus::UnrecoverablePattern))
                .to_str()
                .unwrap(),
            "unrecoverable_pattern"
        );
    }
}
