#ifndef TIMED_LOGIC_H
#define TIMED_LOGIC_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum TlLogic {
  TL_LOGIC_MTL = 0,
  TL_LOGIC_TPTL = 1,
  TL_LOGIC_TTL = 2,
} TlLogic;

typedef enum TlMenu {
  TL_MENU_INT = 0,
  TL_MENU_EXT_INT = 1,
  TL_MENU_B_INT = 2,
  TL_MENU_B_EXT_INT = 3,
  TL_MENU_INT_K = 4,
  TL_MENU_B_INT_K = 5,
} TlMenu;

typedef enum TlStatus {
  TL_STATUS_OK = 0,
  TL_STATUS_NULL_POINTER = 1,
  TL_STATUS_INVALID_UTF8 = 2,
  TL_STATUS_PARSE = 3,
  TL_STATUS_EVAL = 4,
  TL_STATUS_TRANSLATE = 5,
  TL_STATUS_GAME = 6,
  /**
   * The formula is of the wrong logic for the call.
   */
  TL_STATUS_WRONG_LOGIC = 7,
  TL_STATUS_INTERNAL = 8,
} TlStatus;

typedef enum TlVariant {
  TL_VARIANT_US = 0,
  TL_VARIANT_FP = 1,
} TlVariant;

/**
 * A parsed formula of any of the three logics.
 */
typedef struct TlFormula TlFormula;

/**
 * A parsed timed word.
 */
typedef struct TlWord TlWord;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Parses a word in the `<letter> <timestamp>` line format.
 *
 * # Safety
 * `text_ptr` must be a NUL-terminated string and `out` a valid pointer.
 */
enum TlStatus tl_word_parse(const char *text_ptr, struct TlWord **out);

/**
 * # Safety
 * `word` must come from [`tl_word_parse`] and not be used afterwards. NULL is ignored.
 */
void tl_word_free(struct TlWord *word);

/**
 * Number of events, or 0 for NULL.
 *
 * # Safety
 * `word` must be NULL or a live handle.
 */
size_t tl_word_len(const struct TlWord *word);

/**
 * The word in its canonical text form, or NULL for a NULL handle.
 *
 * # Safety
 * `word` must be NULL or a live handle. Release the result with [`tl_string_free`].
 */
char *tl_word_serialize(const struct TlWord *word);

/**
 * Parses a formula of the given logic in the prefix syntax.
 *
 * # Safety
 * `text_ptr` must be a NUL-terminated string and `out` a valid pointer.
 */
enum TlStatus tl_formula_parse(const char *text_ptr, enum TlLogic which, struct TlFormula **out);

/**
 * # Safety
 * `formula` must come from this library and not be used afterwards. NULL is ignored.
 */
void tl_formula_free(struct TlFormula *formula);

/**
 * The formula in prefix syntax, or NULL for a NULL handle.
 *
 * # Safety
 * `formula` must be NULL or a live handle. Release the result with [`tl_string_free`].
 */
char *tl_formula_print(const struct TlFormula *formula);

/**
 * Evaluates `formula` at the 1-based `position`; position 0 means language membership, which
 * for TPTL and TTL requires the word to start at time 0.
 *
 * # Safety
 * Handles must be live and `out` valid.
 */
enum TlStatus tl_eval(const struct TlWord *word,
                      const struct TlFormula *formula,
                      size_t position,
                      bool *out);

/**
 * Compiles a TTL formula into unary MTL.
 *
 * # Safety
 * `formula` must be a live handle and `out` valid.
 */
enum TlStatus tl_translate(const struct TlFormula *formula,
                           bool literal,
                           bool strict_punctuality,
                           struct TlFormula **out);

/**
 * Solves the `rounds`-round EF game from the first positions of both words. `k` caps interval
 * constants (for `IntK`/`BIntK` it is the family's own bound).
 *
 * # Safety
 * Handles must be live and `duplicator_wins` valid.
 */
enum TlStatus tl_game(const struct TlWord *word0,
                      const struct TlWord *word1,
                      size_t rounds,
                      enum TlMenu menu,
                      uint64_t k,
                      enum TlVariant variant,
                      bool *duplicator_wins);

/**
 * The message of the last failed call on this thread, or NULL if the last call succeeded.
 * Release the result with [`tl_string_free`].
 */
char *tl_last_error_message(void);

/**
 * # Safety
 * `s` must be a string returned by this library, or NULL.
 */
void tl_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* TIMED_LOGIC_H */
