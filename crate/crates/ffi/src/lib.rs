//! C ABI for the coverage simulator, so other languages can configure runs,
//! execute sweeps, and read results without the CLI.
//!
//! Conventions: opaque handles (`ruralcov_config_t`, `ruralcov_result_t`)
//! created and freed by this library; integer status codes (`RURALCOV_OK` on
//! success); the last error message of the calling thread is available via
//! `ruralcov_last_error`. Strings are UTF-8 and NUL-terminated; strings
//! returned as `char*` are freed with `ruralcov_string_free`, pointers
//! returned as `const char*` stay valid until their owning handle is freed.
//!
//! The generated header lands in `include/ruralcov.h` at build time.

#![allow(non_camel_case_types)]

use std::cell::RefCell;
use std::ffi::{CStr, CString};
use std::os::raw::c_char;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use ruralcov::output::render_csv;
use ruralcov::{default_run_config, run_configured, RunConfig, SweepResult};

/// Success.
pub const RURALCOV_OK: i32 = 0;
/// Invalid configuration (bad file, key, value, or invariant violation).
pub const RURALCOV_ERR_CONFIG: i32 = 1;
/// The simulation failed at run time.
pub const RURALCOV_ERR_RUNTIME: i32 = 2;
/// A required pointer argument was NULL.
pub const RURALCOV_ERR_NULL: i32 = 3;
/// An index was out of range.
pub const RURALCOV_ERR_INDEX: i32 = 4;
/// A string argument was not valid UTF-8.
pub const RURALCOV_ERR_UTF8: i32 = 5;
/// An internal panic was caught at the boundary.
pub const RURALCOV_ERR_PANIC: i32 = 6;

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::new("").unwrap());
}

fn set_last_error(msg: &str) {
    let sanitized = msg.replace('\0', " ");
    LAST_ERROR.with(|e| {
        *e.borrow_mut() = CString::new(sanitized).unwrap_or_default();
    });
}

/// Opaque run configuration handle.
pub struct ruralcov_config_t {
    inner: RunConfig,
}

/// Opaque sweep-result handle.
pub struct ruralcov_result_t {
    inner: SweepResult,
    mode_strings: Vec<CString>,
}

/// One sweep row; the mode label is fetched separately with
/// `ruralcov_result_mode`.
#[repr(C)]
pub struct ruralcov_row_t {
    pub sweep_value: f64,
    pub p_cov: f64,
    pub ci_low: f64,
    pub ci_high: f64,
    pub n_trials: u64,
    pub seed: u64,
    pub flagged_trials: u64,
}

fn guard<F: FnOnce() -> i32>(f: F) -> i32 {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(code) => code,
        Err(_) => {
            set_last_error("internal panic caught at the FFI boundary");
            RURALCOV_ERR_PANIC
        }
    }
}

unsafe fn cstr_arg<'a>(ptr: *const c_char, name: &str) -> Result<&'a str, i32> {
    if ptr.is_null() {
        set_last_error(&format!("{name} must not be NULL"));
        return Err(RURALCOV_ERR_NULL);
    }
    CStr::from_ptr(ptr).to_str().map_err(|_| {
        set_last_error(&format!("{name} must be valid UTF-8"));
        RURALCOV_ERR_UTF8
    })
}

/// Message describing the most recent error on this thread. The pointer is
/// valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn ruralcov_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// New configuration with every parameter at its default, targeting the
/// given scenario (1, 2 or 3). Free with `ruralcov_config_free`.
#[no_mangle]
pub extern "C" fn ruralcov_config_default(scenario: u32) -> *mut ruralcov_config_t {
    if !(1..=3).contains(&scenario) {
        set_last_error("scenario must be 1, 2 or 3");
        return ptr::null_mut();
    }
    Box::into_raw(Box::new(ruralcov_config_t {
        inner: default_run_config(scenario as u8),
    }))
}

/// Loads a TOML configuration file. Returns NULL on failure (see
/// `ruralcov_last_error`). Free with `ruralcov_config_free`.
///
/// # Safety
/// `path` must be a NUL-terminated string or NULL.
#[no_mangle]
pub unsafe extern "C" fn ruralcov_config_load(path: *const c_char) -> *mut ruralcov_config_t {
    let path = match cstr_arg(path, "path") {
        Ok(p) => p,
        Err(_) => return ptr::null_mut(),
    };
    let text = match std::fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) => {
            set_last_error(&format!("cannot read `{path}`: {e}"));
            return ptr::null_mut();
        }
    };
    match RunConfig::from_toml_str(&text) {
        Ok(cfg) => Box::into_raw(Box::new(ruralcov_config_t { inner: cfg })),
        Err(e) => {
            set_last_error(&e.to_string());
            ptr::null_mut()
        }
    }
}

/// Applies one `section.key=value` override, e.g.
/// `ruralcov_config_set(cfg, "run.n_trials", "2000")`.
///
/// # Safety
/// `config` must be a live handle from this library; `key` and `value` must
/// be NUL-terminated strings.
#[no_mangle]
pub unsafe extern "C" fn ruralcov_config_set(
    config: *mut ruralcov_config_t,
    key: *const c_char,
    value: *const c_char,
) -> i32 {
    guard(|| {
        if config.is_null() {
            set_last_error("config must not be NULL");
            return RURALCOV_ERR_NULL;
        }
        let key = match cstr_arg(key, "key") {
            Ok(k) => k,
            Err(code) => return code,
        };
        let value = match cstr_arg(value, "value") {
            Ok(v) => v,
            Err(code) => return code,
        };
        let cfg = &mut (*config).inner;
        match cfg.apply_override(key, value) {
            Ok(()) => RURALCOV_OK,
            Err(e) => {
                set_last_error(&e.to_string());
                RURALCOV_ERR_CONFIG
            }
        }
    })
}

/// Serializes the resolved configuration as TOML. Free the returned string
/// with `ruralcov_string_free`.
///
/// # Safety
/// `config` must be a live handle from this library or NULL.
#[no_mangle]
pub unsafe extern "C" fn ruralcov_config_to_toml(
    config: *const ruralcov_config_t,
) -> *mut c_char {
    if config.is_null() {
        set_last_error("config must not be NULL");
        return ptr::null_mut();
    }
    let cfg = &(*config).inner;
    let text = cfg.to_toml_string();
    CString::new(text)
        .map(CString::into_raw)
        .unwrap_or(ptr::null_mut())
}

/// # Safety
/// `config` must be NULL or a handle produced by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ruralcov_config_free(config: *mut ruralcov_config_t) {
    if !config.is_null() {
        drop(Box::from_raw(config));
    }
}

fn wrap_result(result: SweepResult) -> *mut ruralcov_result_t {
    let mode_strings = result
        .points
        .iter()
        .map(|p| CString::new(p.mode.as_str()).unwrap_or_default())
        .collect();
    Box::into_raw(Box::new(ruralcov_result_t {
        inner: result,
        mode_strings,
    }))
}

/// Runs the scenario selected by the configuration and stores a result
/// handle in `out`. Free the result with `ruralcov_result_free`.
///
/// # Safety
/// `config` must be a live handle; `out` must point to writable storage.
#[no_mangle]
pub unsafe extern "C" fn ruralcov_run(
    config: *const ruralcov_config_t,
    out: *mut *mut ruralcov_result_t,
) -> i32 {
    guard(|| {
        if config.is_null() || out.is_null() {
            set_last_error("config and out must not be NULL");
            return RURALCOV_ERR_NULL;
        }
        let cfg = &(*config).inner;
        if let Err(e) = cfg.validate() {
            set_last_error(&e.to_string());
            return RURALCOV_ERR_CONFIG;
        }
        match run_configured(cfg) {
            Ok(result) => {
                *out = wrap_result(result);
                RURALCOV_OK
            }
            Err(e) => {
                set_last_error(&e.to_string());
                RURALCOV_ERR_RUNTIME
            }
        }
    })
}

/// Runs one figure-analog sweep (2, 3 or 5) with its default axes at the
/// given trial count and seed.
///
/// # Safety
/// `out` must point to writable storage.
#[no_mangle]
pub unsafe extern "C" fn ruralcov_figure(
    fig_id: u32,
    n_trials: u64,
    seed: u64,
    out: *mut *mut ruralcov_result_t,
) -> i32 {
    guard(|| {
        if out.is_null() {
            set_last_error("out must not be NULL");
            return RURALCOV_ERR_NULL;
        }
        let scenario = match fig_id {
            2 => 1,
            3 => 2,
            5 => 3,
            other => {
                set_last_error(&format!("figure id must be 2, 3 or 5 (got {other})"));
                return RURALCOV_ERR_CONFIG;
            }
        };
        let mut cfg = default_run_config(scenario);
        cfg.run.n_trials = n_trials;
        cfg.run.seed = seed;
        match run_configured(&cfg) {
            Ok(result) => {
                *out = wrap_result(result);
                RURALCOV_OK
            }
            Err(e) => {
                set_last_error(&e.to_string());
                RURALCOV_ERR_RUNTIME
            }
        }
    })
}

/// Number of (sweep value, mode) rows in the result.
///
/// # Safety
/// `result` must be NULL or a live handle from this library.
#[no_mangle]
pub unsafe extern "C" fn ruralcov_result_len(result: *const ruralcov_result_t) -> usize {
    if result.is_null() {
        return 0;
    }
    let res = &(*result).inner;
    res.points.len()
}

/// Copies row `index` into `row`.
///
/// # Safety
/// `result` must be a live handle; `row` must point to writable storage.
#[no_mangle]
pub unsafe extern "C" fn ruralcov_result_row(
    result: *const ruralcov_result_t,
    index: usize,
    row: *mut ruralcov_row_t,
) -> i32 {
    guard(|| {
        if result.is_null() || row.is_null() {
            set_last_error("result and row must not be NULL");
            return RURALCOV_ERR_NULL;
        }
        let res = &(*result).inner;
        let points = &res.points;
        let Some(p) = points.get(index) else {
            set_last_error(&format!(
                "row index {index} out of range ({} rows)",
                points.len()
            ));
            return RURALCOV_ERR_INDEX;
        };
        *row = ruralcov_row_t {
            sweep_value: p.sweep_value,
            p_cov: p.estimate.p_hat,
            ci_low: p.estimate.ci_low,
            ci_high: p.estimate.ci_high,
            n_trials: p.estimate.n_trials,
            seed: p.estimate.seed,
            flagged_trials: p.flagged_trials,
        };
        RURALCOV_OK
    })
}

/// Deployment-mode label of row `index`; the pointer stays valid until the
/// result handle is freed. NULL when the index is out of range.
///
/// # Safety
/// `result` must be NULL or a live handle from this library.
#[no_mangle]
pub unsafe extern "C" fn ruralcov_result_mode(
    result: *const ruralcov_result_t,
    index: usize,
) -> *const c_char {
    if result.is_null() {
        return ptr::null();
    }
    let strings = &(*result).mode_strings;
    match strings.get(index) {
        Some(s) => s.as_ptr(),
        None => ptr::null(),
    }
}

/// Renders the whole result as CSV (same format the CLI writes). Free with
/// `ruralcov_string_free`.
///
/// # Safety
/// `result` must be NULL or a live handle from this library.
#[no_mangle]
pub unsafe extern "C" fn ruralcov_result_csv(result: *const ruralcov_result_t) -> *mut c_char {
    if result.is_null() {
        set_last_error("result must not be NULL");
        return ptr::null_mut();
    }
    let res = &(*result).inner;
    CString::new(render_csv(res))
        .map(CString::into_raw)
        .unwrap_or(ptr::null_mut())
}

/// # Safety
/// `result` must be NULL or a handle produced by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ruralcov_result_free(result: *mut ruralcov_result_t) {
    if !result.is_null() {
        drop(Box::from_raw(result));
    }
}

/// Frees a string returned by this library.
///
/// # Safety
/// `s` must be NULL or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ruralcov_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_small(scenario: u32) -> *mut ruralcov_result_t {
        let cfg = ruralcov_config_default(scenario);
        assert!(!cfg.is_null());
        unsafe {
            let key = CString::new("run.n_trials").unwrap();
            let value = CString::new("150").unwrap();
            assert_eq!(
                ruralcov_config_set(cfg, key.as_ptr(), value.as_ptr()),
                RURALCOV_OK
            );
            let mut out: *mut ruralcov_result_t = ptr::null_mut();
            assert_eq!(ruralcov_run(cfg, &mut out), RURALCOV_OK);
            ruralcov_config_free(cfg);
            out
        }
    }

    #[test]
    fn default_config_runs_and_rows_read_back() {
        unsafe {
            let result = run_small(3);
            let len = ruralcov_result_len(result);
            assert_eq!(len, 8); // 4 distances x 2 modes
            let mut row = std::mem::MaybeUninit::<ruralcov_row_t>::uninit();
            assert_eq!(
                ruralcov_result_row(result, 0, row.as_mut_ptr()),
                RURALCOV_OK
            );
            let row = row.assume_init();
            assert_eq!(row.sweep_value, 500.0);
            assert_eq!(row.n_trials, 150);
            assert!(row.ci_low <= row.p_cov && row.p_cov <= row.ci_high);
            let mode = ruralcov_result_mode(result, 0);
            assert!(!mode.is_null());
            let mode = CStr::from_ptr(mode).to_str().unwrap();
            assert_eq!(mode, "EE_PER_CLUSTER_EDGE");

            let csv = ruralcov_result_csv(result);
            assert!(!csv.is_null());
            let text = CStr::from_ptr(csv).to_str().unwrap().to_string();
            assert!(text.starts_with("sweep_value,mode,p_cov"));
            assert_eq!(text.lines().count(), 9);
            ruralcov_string_free(csv);
            ruralcov_result_free(result);
        }
    }

    #[test]
    fn figure_entry_point_matches_direct_run() {
        unsafe {
            let mut a: *mut ruralcov_result_t = ptr::null_mut();
            assert_eq!(ruralcov_figure(5, 120, 7, &mut a), RURALCOV_OK);
            let mut cfg = default_run_config(3);
            cfg.run.n_trials = 120;
            cfg.run.seed = 7;
            let direct = run_configured(&cfg).unwrap();
            let got = &(*a).inner;
            assert_eq!(*got, direct);
            ruralcov_result_free(a);

            let mut bad: *mut ruralcov_result_t = ptr::null_mut();
            assert_eq!(ruralcov_figure(4, 10, 1, &mut bad), RURALCOV_ERR_CONFIG);
            let msg = CStr::from_ptr(ruralcov_last_error()).to_str().unwrap();
            assert!(msg.contains("figure id"), "{msg}");
        }
    }

    #[test]
    fn error_paths_set_codes_and_messages() {
        unsafe {
            // Unknown key.
            let cfg = ruralcov_config_default(1);
            let key = CString::new("channel.bogus").unwrap();
            let value = CString::new("1").unwrap();
            assert_eq!(
                ruralcov_config_set(cfg, key.as_ptr(), value.as_ptr()),
                RURALCOV_ERR_CONFIG
            );
            let msg = CStr::from_ptr(ruralcov_last_error()).to_str().unwrap();
            assert!(msg.contains("channel.bogus"), "{msg}");

            // Invariant violation surfaces from run, not set.
            let key = CString::new("channel.noise_w").unwrap();
            let value = CString::new("-1").unwrap();
            assert_eq!(
                ruralcov_config_set(cfg, key.as_ptr(), value.as_ptr()),
                RURALCOV_OK
            );
            let mut out: *mut ruralcov_result_t = ptr::null_mut();
            assert_eq!(ruralcov_run(cfg, &mut out), RURALCOV_ERR_CONFIG);
            ruralcov_config_free(cfg);

            // Null arguments.
            assert_eq!(ruralcov_run(ptr::null(), &mut out), RURALCOV_ERR_NULL);
            assert_eq!(ruralcov_result_len(ptr::null()), 0);
            assert!(ruralcov_config_default(9).is_null());

            // Missing file.
            let missing = CString::new("/nonexistent/ruralcov.toml").unwrap();
            assert!(ruralcov_config_load(missing.as_ptr()).is_null());
        }
    }

    #[test]
    fn row_index_out_of_range() {
        unsafe {
            let result = run_small(3);
            let mut row = std::mem::MaybeUninit::<ruralcov_row_t>::uninit();
            assert_eq!(
                ruralcov_result_row(result, 99, row.as_mut_ptr()),
                RURALCOV_ERR_INDEX
            );
            assert!(ruralcov_result_mode(result, 99).is_null());
            ruralcov_result_free(result);
        }
    }
}
