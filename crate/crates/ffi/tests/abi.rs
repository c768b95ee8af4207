use std::ffi::{CStr, CString};
use std::ptr;

use geolang_ffi::*;

fn c(s: &str) -> CString {
    CString::new(s).unwrap()
}

fn last_error() -> String {
    let p = gl_last_error_message();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

unsafe fn group(name: &str) -> *mut GlGroup {
    let mut g = ptr::null_mut();
    assert_eq!(gl_group_builtin(c(name).as_ptr(), &mut g), GL_OK);
    g
}

unsafe fn cone(g: *const GlGroup, filter: &str, m: usize) -> *mut GlFsa {
    let mut f = ptr::null_mut();
    assert_eq!(
        gl_cone_build(g, c(filter).as_ptr(), m, 40, &mut f),
        GL_OK,
        "{}",
        last_error()
    );
    f
}

#[test]
fn free_group_cone_counts() {
    unsafe {
        let g = group("f2");
        let f = cone(g, "trivial", 1);
        assert_eq!(gl_fsa_state_count(f), 5);
        let mut counts = [0u64; 6];
        assert_eq!(gl_fsa_count_words(f, 5, counts.as_mut_ptr()), GL_OK);
        assert_eq!(counts, [1, 4, 12, 36, 108, 324]);
        let mut rate = 0.0;
        assert_eq!(gl_fsa_growth_rate(f, &mut rate), GL_OK);
        assert!((rate - 3.0).abs() < 1e-6);
        let mut yes = false;
        assert_eq!(gl_fsa_accepts(f, c("a b a^-1").as_ptr(), &mut yes), GL_OK);
        assert!(yes);
        assert_eq!(gl_fsa_accepts(f, c("a a^-1").as_ptr(), &mut yes), GL_OK);
        assert!(!yes);
        gl_fsa_free(f);
        gl_group_free(g);
    }
}

#[test]
fn words_and_normal_forms() {
    unsafe {
        let g = group("z2");
        let mut len = 0usize;
        assert_eq!(
            gl_group_geodesic_length(g, c("x y x^-1 y").as_ptr(), &mut len),
            GL_OK
        );
        assert_eq!(len, 2);
        let mut nf = ptr::null_mut();
        assert_eq!(
            gl_group_normal_form(g, c("y x x^-1").as_ptr(), &mut nf),
            GL_OK
        );
        assert_eq!(CStr::from_ptr(nf).to_str().unwrap(), "y");
        gl_string_free(nf);
        assert_eq!(gl_group_geodesic_length(g, c("x q").as_ptr(), &mut len), 10);
        assert!(last_error().contains('q'), "{}", last_error());
        gl_group_free(g);
    }
}

#[test]
fn json_round_trip_preserves_the_language() {
    unsafe {
        let g = group("z2");
        let f = cone(g, "trivial", 2);
        let mut json = ptr::null_mut();
        assert_eq!(gl_fsa_to_json(f, &mut json), GL_OK);
        let mut back = ptr::null_mut();
        assert_eq!(gl_fsa_from_json(json, &mut back), GL_OK);
        gl_string_free(json);
        let (mut a, mut b) = ([0u64; 9], [0u64; 9]);
        gl_fsa_count_words(f, 8, a.as_mut_ptr());
        gl_fsa_count_words(back, 8, b.as_mut_ptr());
        assert_eq!(a, b);
        // geodesics in the square lattice: 4n words of length n >= 1 reach
        // the axes, the rest the quadrants
        assert_eq!(&a[..4], &[1, 4, 12, 28]);
        let mut dot = ptr::null_mut();
        assert_eq!(gl_fsa_to_dot(back, &mut dot), GL_OK);
        assert!(CStr::from_ptr(dot).to_str().unwrap().starts_with("digraph"));
        gl_string_free(dot);
        gl_fsa_free(back);
        gl_fsa_free(f);
        gl_group_free(g);
    }
}

#[test]
fn errors_carry_codes_and_messages() {
    unsafe {
        let mut g = ptr::null_mut();
        assert_eq!(gl_group_builtin(ptr::null(), &mut g), GL_ERR_NULL);
        assert_eq!(
            gl_group_builtin(c("nowhere").as_ptr(), &mut g),
            GL_ERR_UNKNOWN_GROUP
        );
        assert!(last_error().contains("nowhere"));
        assert!(g.is_null());
        let bad = [0xffu8, 0];
        assert_eq!(gl_group_builtin(bad.as_ptr().cast(), &mut g), GL_ERR_UTF8);

        let s3 = group("s3");
        let mut f = ptr::null_mut();
        assert_eq!(gl_cone_build(s3, c("trivial").as_ptr(), 1, 40, &mut f), 18);
        assert!(f.is_null());
        assert_eq!(
            gl_cone_build(s3, c("trivial").as_ptr(), 2, 40, &mut f),
            GL_OK
        );
        assert_eq!(gl_fsa_state_count(f), 6);
        gl_fsa_free(f);
        gl_group_free(s3);

        assert_eq!(gl_fsa_state_count(ptr::null()), 0);
        assert_eq!(gl_fsa_from_json(c("{").as_ptr(), &mut f), 28);
        gl_fsa_free(ptr::null_mut());
        gl_group_free(ptr::null_mut());
        gl_string_free(ptr::null_mut());
    }
}

#[test]
fn spec_text_builds_a_group() {
    unsafe {
        let spec = c("kind = \"raag\"\ngenerators = [\"p\", \"q\"]\ncommute = [[\"p\", \"q\"]]\n");
        let mut g = ptr::null_mut();
        assert_eq!(
            gl_group_from_spec(spec.as_ptr(), &mut g),
            GL_OK,
            "{}",
            last_error()
        );
        let f = cone(g, "trivial", 1);
        assert_eq!(gl_fsa_state_count(f), 9);
        gl_fsa_free(f);
        gl_group_free(g);
        assert_eq!(gl_group_from_spec(c("kind = 3").as_ptr(), &mut g), 27);
    }
}
