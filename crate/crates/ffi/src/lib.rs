//! C ABI for geolang.
//!
//! Groups and automata are opaque heap handles freed by their `*_free`
//! function. Every fallible call returns a status code: `GL_OK`, a negative
//! `GL_ERR_*` for problems at the boundary, or a positive library error code
//! (the same numbers the `geolang` CLI exits with). The message for the most
//! recent failure on the calling thread is available from
//! [`gl_last_error_message`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use geolang::cone::{build_with_budget, FilterSpec, WindowFilter, DEFAULT_CLASS_BUDGET};
use geolang::fsa::Fsa;
use geolang::group::{builtin, GroupSpec, LoadedGroup};
use geolang::growth::{growth_rate, DEFAULT_PF_TOLERANCE};
use geolang::Error;

pub const GL_OK: i32 = 0;
/// A required pointer argument was null.
pub const GL_ERR_NULL: i32 = -1;
/// A string argument was not valid UTF-8.
pub const GL_ERR_UTF8: i32 = -2;
/// The library panicked; the handle arguments should be considered unusable.
pub const GL_ERR_PANIC: i32 = -3;
/// A count did not fit the output integer type.
pub const GL_ERR_OVERFLOW: i32 = -4;
/// No built-in group has the given name.
pub const GL_ERR_UNKNOWN_GROUP: i32 = -5;

/// A finitely generated group with its symbol order and named subgroups.
pub struct GlGroup(LoadedGroup);

/// A finite state automaton over a group's generator alphabet.
pub struct GlFsa(Fsa);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let c = CString::new(msg.into().replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

enum Fail {
    Code(i32, String),
    Lib(Error),
}

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail::Lib(e)
    }
}

/// Runs `f`, translating errors and panics into status codes.
fn guard(f: impl FnOnce() -> Result<(), Fail>) -> i32 {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => GL_OK,
        Ok(Err(Fail::Code(code, msg))) => {
            set_error(msg);
            code
        }
        Ok(Err(Fail::Lib(e))) => {
            set_error(e.to_string());
            e.exit_code()
        }
        Err(_) => {
            set_error("panic inside geolang");
            GL_ERR_PANIC
        }
    }
}

unsafe fn str_arg<'a>(p: *const c_char, what: &str) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(Fail::Code(GL_ERR_NULL, format!("{what} is null")));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Fail::Code(GL_ERR_UTF8, format!("{what} is not UTF-8")))
}

unsafe fn ref_arg<'a, T>(p: *const T, what: &str) -> Result<&'a T, Fail> {
    p.as_ref()
        .ok_or_else(|| Fail::Code(GL_ERR_NULL, format!("{what} is null")))
}

fn out_arg<T>(p: *mut T, what: &str) -> Result<(), Fail> {
    if p.is_null() {
        return Err(Fail::Code(GL_ERR_NULL, format!("{what} is null")));
    }
    Ok(())
}

fn c_string(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " "))
        .expect("no interior nul")
        .into_raw()
}

/// Message for the last failed call on this thread, or null. The pointer is
/// valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn gl_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Frees a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn gl_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Loads a built-in group (`f2`, `z2`, `z2*z`, `raag-abc`, `z-x-f2`, `s3`).
///
/// # Safety
/// `name` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gl_group_builtin(name: *const c_char, out: *mut *mut GlGroup) -> i32 {
    guard(|| {
        let name = str_arg(name, "name")?;
        out_arg(out, "out")?;
        let g = builtin(name).ok_or_else(|| {
            Fail::Code(GL_ERR_UNKNOWN_GROUP, format!("no built-in group `{name}`"))
        })??;
        *out = Box::into_raw(Box::new(GlGroup(g)));
        Ok(())
    })
}

/// Parses a group from the text of a TOML group spec.
///
/// # Safety
/// `spec` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gl_group_from_spec(spec: *const c_char, out: *mut *mut GlGroup) -> i32 {
    guard(|| {
        let text = str_arg(spec, "spec")?;
        out_arg(out, "out")?;
        let g = GroupSpec::parse(text)?.load("spec")?;
        *out = Box::into_raw(Box::new(GlGroup(g)));
        Ok(())
    })
}

/// # Safety
/// `g` must come from a `gl_group_*` constructor and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn gl_group_free(g: *mut GlGroup) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// Geodesic length of a space-separated word such as `"a b^-1 a"`.
///
/// # Safety
/// `g` must be a live group handle, `word` nul-terminated, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn gl_group_geodesic_length(
    g: *const GlGroup,
    word: *const c_char,
    out: *mut usize,
) -> i32 {
    guard(|| {
        let g = &ref_arg(g, "group")?.0;
        let w = g.model.alphabet().parse_word(str_arg(word, "word")?)?;
        out_arg(out, "out")?;
        *out = g.model.geodesic_length(&w)?;
        Ok(())
    })
}

/// Normal form of a word, as a newly allocated string (free with
/// [`gl_string_free`]). The identity is written as `ε`.
///
/// # Safety
/// `g` must be a live group handle, `word` nul-terminated, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn gl_group_normal_form(
    g: *const GlGroup,
    word: *const c_char,
    out: *mut *mut c_char,
) -> i32 {
    guard(|| {
        let g = &ref_arg(g, "group")?.0;
        let al = g.model.alphabet();
        let w = al.parse_word(str_arg(word, "word")?)?;
        out_arg(out, "out")?;
        *out = c_string(al.format_word(&g.model.normal_form(&w)?));
        Ok(())
    })
}

/// Builds the cone-type automaton at locality `m` with the named filter
/// (`trivial`, `syllable:S`, `commuting:S`), exploring words up to
/// `depth_budget`.
///
/// # Safety
/// `g` must be a live group handle, `filter` nul-terminated, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn gl_cone_build(
    g: *const GlGroup,
    filter: *const c_char,
    m: usize,
    depth_budget: usize,
    out: *mut *mut GlFsa,
) -> i32 {
    guard(|| {
        let g = &ref_arg(g, "group")?.0;
        let spec: FilterSpec = str_arg(filter, "filter")?.parse()?;
        out_arg(out, "out")?;
        let f = WindowFilter::new(spec, &g.model);
        let auto = build_with_budget(&g.model, m, &f, depth_budget, DEFAULT_CLASS_BUDGET)?;
        *out = Box::into_raw(Box::new(GlFsa(auto.into_fsa())));
        Ok(())
    })
}

/// # Safety
/// `f` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn gl_fsa_free(f: *mut GlFsa) {
    if !f.is_null() {
        drop(Box::from_raw(f));
    }
}

/// Number of states, or 0 for a null handle.
///
/// # Safety
/// `f` must be null or a live automaton handle.
#[no_mangle]
pub unsafe extern "C" fn gl_fsa_state_count(f: *const GlFsa) -> usize {
    f.as_ref().map_or(0, |f| f.0.num_states())
}

/// Whether the automaton accepts a space-separated word.
///
/// # Safety
/// `f` must be a live automaton handle, `word` nul-terminated, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn gl_fsa_accepts(
    f: *const GlFsa,
    word: *const c_char,
    out: *mut bool,
) -> i32 {
    guard(|| {
        let f = &ref_arg(f, "fsa")?.0;
        let w = f.alphabet().parse_word(str_arg(word, "word")?)?;
        out_arg(out, "out")?;
        *out = f.accepts(&w)?;
        Ok(())
    })
}

/// Accepted words of each length `0..=n`, written to `out[0..=n]`.
/// Nondeterministic automata are determinized first.
///
/// # Safety
/// `f` must be a live automaton handle and `out` must have room for `n + 1`
/// values.
#[no_mangle]
pub unsafe extern "C" fn gl_fsa_count_words(f: *const GlFsa, n: usize, out: *mut u64) -> i32 {
    guard(|| {
        let f = &ref_arg(f, "fsa")?.0;
        out_arg(out, "out")?;
        let counts = f.determinize().count_words(n)?;
        let values = counts
            .sphere_u64()
            .ok_or_else(|| Fail::Code(GL_ERR_OVERFLOW, "word count exceeds 64 bits".into()))?;
        ptr::copy_nonoverlapping(values.as_ptr(), out, values.len());
        Ok(())
    })
}

/// Exponential growth rate of the accepted language.
///
/// # Safety
/// `f` must be a live automaton handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn gl_fsa_growth_rate(f: *const GlFsa, out: *mut f64) -> i32 {
    guard(|| {
        let f = &ref_arg(f, "fsa")?.0;
        out_arg(out, "out")?;
        *out = growth_rate(f, DEFAULT_PF_TOLERANCE)?;
        Ok(())
    })
}

/// Serializes the automaton to JSON (free with [`gl_string_free`]).
///
/// # Safety
/// `f` must be a live automaton handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn gl_fsa_to_json(f: *const GlFsa, out: *mut *mut c_char) -> i32 {
    guard(|| {
        let f = &ref_arg(f, "fsa")?.0;
        out_arg(out, "out")?;
        *out = c_string(f.to_json());
        Ok(())
    })
}

/// Graphviz rendering of the automaton (free with [`gl_string_free`]).
///
/// # Safety
/// `f` must be a live automaton handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn gl_fsa_to_dot(f: *const GlFsa, out: *mut *mut c_char) -> i32 {
    guard(|| {
        let f = &ref_arg(f, "fsa")?.0;
        out_arg(out, "out")?;
        *out = c_string(f.to_dot("fsa"));
        Ok(())
    })
}

/// Reads an automaton from the JSON produced by [`gl_fsa_to_json`].
///
/// # Safety
/// `json` must be nul-terminated and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn gl_fsa_from_json(json: *const c_char, out: *mut *mut GlFsa) -> i32 {
    guard(|| {
        let f = Fsa::from_json(str_arg(json, "json")?)?;
        out_arg(out, "out")?;
        *out = Box::into_raw(Box::new(GlFsa(f)));
        Ok(())
    })
}
