//! C ABI over `timed_logic`.
//!
//! Words and formulas live behind opaque handles that the caller releases with the matching
//! `*_free` function. Every fallible call returns a [`TlStatus`]; on failure a message for the
//! calling thread can be fetched with [`tl_last_error_message`]. Strings returned by the library
//! are owned by the caller and released with [`tl_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use timed_logic::games::{build_menu, solve_with, GameSettings, Player, Variant};
use timed_logic::logic::{parse_formula, print_formula, Formula, IntervalFamily, Logic, Valuation};
use timed_logic::semantics::{
    eval_mtl, eval_tptl, eval_ttl, lang_member_mtl, lang_member_tptl, lang_member_ttl,
};
use timed_logic::ttl2mitl::{translate, TranslateOptions};
use timed_logic::word::{parse_word, TimedWord};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TlStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    Eval = 4,
    Translate = 5,
    Game = 6,
    /// The formula is of the wrong logic for the call.
    WrongLogic = 7,
    Internal = 8,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TlLogic {
    Mtl = 0,
    Tptl = 1,
    Ttl = 2,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TlMenu {
    Int = 0,
    ExtInt = 1,
    BInt = 2,
    BExtInt = 3,
    IntK = 4,
    BIntK = 5,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TlVariant {
    Us = 0,
    Fp = 1,
}

/// A parsed timed word.
pub struct TlWord(TimedWord);

/// A parsed formula of any of the three logics.
pub struct TlFormula(Formula);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("interior NULs removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

type Failure = (TlStatus, String);

/// Runs `body`, records its error message, and keeps panics from crossing the boundary.
fn guarded(body: impl FnOnce() -> Result<(), Failure>) -> TlStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => {
            LAST_ERROR.with(|e| *e.borrow_mut() = None);
            TlStatus::Ok
        }
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal error: the library panicked".into());
            TlStatus::Internal
        }
    }
}

unsafe fn text<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err((TlStatus::NullPointer, format!("{what} is NULL")));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|e| (TlStatus::InvalidUtf8, format!("{what}: {e}")))
}

unsafe fn borrow<'a, T>(p: *const T, what: &str) -> Result<&'a T, Failure> {
    p.as_ref()
        .ok_or_else(|| (TlStatus::NullPointer, format!("{what} is NULL")))
}

unsafe fn write_out<T>(out: *mut T, value: T, what: &str) -> Result<(), Failure> {
    if out.is_null() {
        return Err((TlStatus::NullPointer, format!("{what} is NULL")));
    }
    out.write(value);
    Ok(())
}

fn owned_string(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " "))
        .expect("interior NULs removed")
        .into_raw()
}

/// Parses a word in the `<letter> <timestamp>` line format.
///
/// # Safety
/// `text_ptr` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn tl_word_parse(text_ptr: *const c_char, out: *mut *mut TlWord) -> TlStatus {
    guarded(|| {
        let s = text(text_ptr, "text")?;
        let w = parse_word(s).map_err(|e| (TlStatus::Parse, e.to_string()))?;
        write_out(out, Box::into_raw(Box::new(TlWord(w))), "out")
    })
}

/// # Safety
/// `word` must come from [`tl_word_parse`] and not be used afterwards. NULL is ignored.
#[no_mangle]
pub unsafe extern "C" fn tl_word_free(word: *mut TlWord) {
    if !word.is_null() {
        drop(Box::from_raw(word));
    }
}

/// Number of events, or 0 for NULL.
///
/// # Safety
/// `word` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn tl_word_len(word: *const TlWord) -> usize {
    word.as_ref().map_or(0, |w| w.0.len())
}

/// The word in its canonical text form, or NULL for a NULL handle.
///
/// # Safety
/// `word` must be NULL or a live handle. Release the result with [`tl_string_free`].
#[no_mangle]
pub unsafe extern "C" fn tl_word_serialize(word: *const TlWord) -> *mut c_char {
    match word.as_ref() {
        Some(w) => owned_string(w.0.serialize()),
        None => ptr::null_mut(),
    }
}

fn logic(l: TlLogic) -> Logic {
    match l {
        TlLogic::Mtl => Logic::Mtl,
        TlLogic::Tptl => Logic::Tptl,
        TlLogic::Ttl => Logic::Ttl,
    }
}

/// Parses a formula of the given logic in the prefix syntax.
///
/// # Safety
/// `text_ptr` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn tl_formula_parse(
    text_ptr: *const c_char,
    which: TlLogic,
    out: *mut *mut TlFormula,
) -> TlStatus {
    guarded(|| {
        let s = text(text_ptr, "text")?;
        let f = parse_formula(s, logic(which)).map_err(|e| (TlStatus::Parse, e.to_string()))?;
        write_out(out, Box::into_raw(Box::new(TlFormula(f))), "out")
    })
}

/// # Safety
/// `formula` must come from this library and not be used afterwards. NULL is ignored.
#[no_mangle]
pub unsafe extern "C" fn tl_formula_free(formula: *mut TlFormula) {
    if !formula.is_null() {
        drop(Box::from_raw(formula));
    }
}

/// The formula in prefix syntax, or NULL for a NULL handle.
///
/// # Safety
/// `formula` must be NULL or a live handle. Release the result with [`tl_string_free`].
#[no_mangle]
pub unsafe extern "C" fn tl_formula_print(formula: *const TlFormula) -> *mut c_char {
    match formula.as_ref() {
        Some(f) => owned_string(print_formula(&f.0)),
        None => ptr::null_mut(),
    }
}

/// Evaluates `formula` at the 1-based `position`; position 0 means language membership, which
/// for TPTL and TTL requires the word to start at time 0.
///
/// # Safety
/// Handles must be live and `out` valid.
#[no_mangle]
pub unsafe extern "C" fn tl_eval(
    word: *const TlWord,
    formula: *const TlFormula,
    position: usize,
    out: *mut bool,
) -> TlStatus {
    guarded(|| {
        let w = &borrow(word, "word")?.0;
        let f = &borrow(formula, "formula")?.0;
        let nu = Valuation::initial();
        let eval_err = |e: timed_logic::semantics::EvalError| (TlStatus::Eval, e.to_string());
        let v = match (f, position) {
            (Formula::Mtl(g), 0) => lang_member_mtl(w, g),
            (Formula::Tptl(g), 0) => lang_member_tptl(w, g).map_err(eval_err)?,
            (Formula::Ttl(g), 0) => lang_member_ttl(w, g).map_err(eval_err)?,
            (Formula::Mtl(g), i) => eval_mtl(w, i, g).map_err(eval_err)?,
            (Formula::Tptl(g), i) => eval_tptl(w, i, &nu, g).map_err(eval_err)?,
            (Formula::Ttl(g), i) => eval_ttl(w, i, &nu, g).map_err(eval_err)?,
        };
        write_out(out, v, "out")
    })
}

/// Compiles a TTL formula into unary MTL.
///
/// # Safety
/// `formula` must be a live handle and `out` valid.
#[no_mangle]
pub unsafe extern "C" fn tl_translate(
    formula: *const TlFormula,
    literal: bool,
    strict_punctuality: bool,
    out: *mut *mut TlFormula,
) -> TlStatus {
    guarded(|| {
        let Formula::Ttl(f) = &borrow(formula, "formula")?.0 else {
            return Err((
                TlStatus::WrongLogic,
                "translation takes a TTL formula".into(),
            ));
        };
        let opts = TranslateOptions {
            literal,
            strict_punctuality,
        };
        let t = translate(f, opts).map_err(|e| (TlStatus::Translate, e.to_string()))?;
        write_out(
            out,
            Box::into_raw(Box::new(TlFormula(Formula::Mtl(t.formula)))),
            "out",
        )
    })
}

/// Solves the `rounds`-round EF game from the first positions of both words. `k` caps interval
/// constants (for `IntK`/`BIntK` it is the family's own bound).
///
/// # Safety
/// Handles must be live and `duplicator_wins` valid.
#[no_mangle]
pub unsafe extern "C" fn tl_game(
    word0: *const TlWord,
    word1: *const TlWord,
    rounds: usize,
    menu: TlMenu,
    k: u64,
    variant: TlVariant,
    duplicator_wins: *mut bool,
) -> TlStatus {
    guarded(|| {
        let w0 = &borrow(word0, "word0")?.0;
        let w1 = &borrow(word1, "word1")?.0;
        let kind = match menu {
            TlMenu::Int => IntervalFamily::Int,
            TlMenu::ExtInt => IntervalFamily::ExtInt,
            TlMenu::BInt => IntervalFamily::BInt,
            TlMenu::BExtInt => IntervalFamily::BExtInt,
            TlMenu::IntK => IntervalFamily::IntK(k),
            TlMenu::BIntK => IntervalFamily::BIntK(k),
        };
        let variant = match variant {
            TlVariant::Us => Variant::Us,
            TlVariant::Fp => Variant::Fp,
        };
        let menu = build_menu(kind, k);
        let outcome = solve_with(w0, w1, 1, 1, rounds, &menu, GameSettings::new(variant))
            .map_err(|e| (TlStatus::Game, e.to_string()))?;
        write_out(
            duplicator_wins,
            outcome.winner == Player::Duplicator,
            "duplicator_wins",
        )
    })
}

/// The message of the last failed call on this thread, or NULL if the last call succeeded.
/// Release the result with [`tl_string_free`].
#[no_mangle]
pub extern "C" fn tl_last_error_message() -> *mut c_char {
    LAST_ERROR.with(|e| {
        e.borrow()
            .as_ref()
            .map_or(ptr::null_mut(), |c| c.clone().into_raw())
    })
}

/// # Safety
/// `s` must be a string returned by this library, or NULL.
#[no_mangle]
pub unsafe extern "C" fn tl_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(s: &str) -> CString {
        CString::new(s).unwrap()
    }

    unsafe fn take(s: *mut c_char) -> String {
        assert!(!s.is_null());
        let out = CStr::from_ptr(s).to_str().unwrap().to_owned();
        tl_string_free(s);
        out
    }

    unsafe fn word(text: &str) -> *mut TlWord {
        let mut w = ptr::null_mut();
        assert_eq!(tl_word_parse(c(text).as_ptr(), &mut w), TlStatus::Ok);
        w
    }

    unsafe fn formula(text: &str, l: TlLogic) -> *mut TlFormula {
        let mut f = ptr::null_mut();
        assert_eq!(tl_formula_parse(c(text).as_ptr(), l, &mut f), TlStatus::Ok);
        f
    }

    #[test]
    fn word_round_trip() {
        unsafe {
            let w = word("a 0\nb 3/2");
            assert_eq!(tl_word_len(w), 2);
            assert_eq!(take(tl_word_serialize(w)), "a 0/1\nb 3/2");
            tl_word_free(w);
        }
    }

    #[test]
    fn membership_split() {
        unsafe {
            let f = formula("(F [0,inf) (and a (F (1,2) c)))", TlLogic::Mtl);
            let a = word("a 0\na 1\nc 7/2");
            let b = word("a 0\na 1\nc 5/2");
            let mut v = true;
            assert_eq!(tl_eval(a, f, 0, &mut v), TlStatus::Ok);
            assert!(!v);
            assert_eq!(tl_eval(b, f, 0, &mut v), TlStatus::Ok);
            assert!(v);
            assert_eq!(
                tl_game(a, b, 1, TlMenu::BIntK, 1, TlVariant::Us, &mut v),
                TlStatus::Ok
            );
            assert!(v);
            tl_word_free(a);
            tl_word_free(b);
            tl_formula_free(f);
        }
    }

    #[test]
    fn errors_set_the_message() {
        unsafe {
            let mut f = ptr::null_mut();
            let st = tl_formula_parse(c("(F [2,1] a)").as_ptr(), TlLogic::Mtl, &mut f);
            assert_eq!(st, TlStatus::Parse);
            assert!(f.is_null());
            assert!(!take(tl_last_error_message()).is_empty());

            let mut w = ptr::null_mut();
            assert_eq!(tl_word_parse(ptr::null(), &mut w), TlStatus::NullPointer);

            let ok = word("a 0");
            assert!(tl_last_error_message().is_null());
            let g = formula("(freeze x (ev a (cmp T-x < 1)))", TlLogic::Ttl);
            let late = word("a 1");
            let mut v = false;
            assert_eq!(tl_eval(late, g, 0, &mut v), TlStatus::Eval);
            assert_eq!(tl_eval(ok, g, 0, &mut v), TlStatus::Ok);
            assert!(v);
            for h in [ok, late] {
                tl_word_free(h);
            }
            tl_formula_free(g);
        }
    }

    #[test]
    fn translation_handles() {
        unsafe {
            let f = formula("(sp (X (ev b (tt)) (top)))", TlLogic::Ttl);
            let mut out = ptr::null_mut();
            assert_eq!(tl_translate(f, false, false, &mut out), TlStatus::Ok);
            let printed = take(tl_formula_print(out));
            assert!(printed.starts_with('('));
            let mtl = formula("a", TlLogic::Mtl);
            let mut dummy = ptr::null_mut();
            assert_eq!(
                tl_translate(mtl, false, false, &mut dummy),
                TlStatus::WrongLogic
            );
            tl_formula_free(out);
            tl_formula_free(f);
            tl_formula_free(mtl);
        }
    }
}
