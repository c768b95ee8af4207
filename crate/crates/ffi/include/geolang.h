#ifndef GEOLANG_H
#define GEOLANG_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

#define GL_OK 0

/**
 * A required pointer argument was null.
 */
#define GL_ERR_NULL -1

/**
 * A string argument was not valid UTF-8.
 */
#define GL_ERR_UTF8 -2

/**
 * The library panicked; the handle arguments should be considered unusable.
 */
#define GL_ERR_PANIC -3

/**
 * A count did not fit the output integer type.
 */
#define GL_ERR_OVERFLOW -4

/**
 * No built-in group has the given name.
 */
#define GL_ERR_UNKNOWN_GROUP -5

/**
 * A finite state automaton over a group's generator alphabet.
 */
typedef struct GlFsa GlFsa;

/**
 * A finitely generated group with its symbol order and named subgroups.
 */
typedef struct GlGroup GlGroup;

/**
 * Message for the last failed call on this thread, or null. The pointer is
 * valid until the next failing call on the same thread.
 */
const char *gl_last_error_message(void);

/**
 * Frees a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must come from this library and not have been freed.
 */
void gl_string_free(char *s);

/**
 * Loads a built-in group (`f2`, `z2`, `z2*z`, `raag-abc`, `z-x-f2`, `s3`).
 *
 * # Safety
 * `name` must be a nul-terminated string; `out` must be writable.
 */
int32_t gl_group_builtin(const char *name, GlGroup **out);

/**
 * Parses a group from the text of a TOML group spec.
 *
 * # Safety
 * `spec` must be a nul-terminated string; `out` must be writable.
 */
int32_t gl_group_from_spec(const char *spec, GlGroup **out);

/**
 * # Safety
 * `g` must come from a `gl_group_*` constructor and not have been freed.
 */
void gl_group_free(GlGroup *g);

/**
 * Geodesic length of a space-separated word such as `"a b^-1 a"`.
 *
 * # Safety
 * `g` must be a live group handle, `word` nul-terminated, `out` writable.
 */
int32_t gl_group_geodesic_length(const GlGroup *g, const char *word, size_t *out);

/**
 * Normal form of a word, as a newly allocated string (free with
 * [`gl_string_free`]). The identity is written as `ε`.
 *
 * # Safety
 * `g` must be a live group handle, `word` nul-terminated, `out` writable.
 */
int32_t gl_group_normal_form(const GlGroup *g, const char *word, char **out);

/**
 * Builds the cone-type automaton at locality `m` with the named filter
 * (`trivial`, `syllable:S`, `commuting:S`), exploring words up to
 * `depth_budget`.
 *
 * # Safety
 * `g` must be a live group handle, `filter` nul-terminated, `out` writable.
 */
int32_t gl_cone_build(const GlGroup *g,
                      const char *filter,
                      size_t m,
                      size_t depth_budget,
                      GlFsa **out);

/**
 * # Safety
 * `f` must come from this library and not have been freed.
 */
void gl_fsa_free(GlFsa *f);

/**
 * Number of states, or 0 for a null handle.
 *
 * # Safety
 * `f` must be null or a live automaton handle.
 */
size_t gl_fsa_state_count(const GlFsa *f);

/**
 * Whether the automaton accepts a space-separated word.
 *
 * # Safety
 * `f` must be a live automaton handle, `word` nul-terminated, `out` writable.
 */
int32_t gl_fsa_accepts(const GlFsa *f, const char *word, bool *out);

/**
 * Accepted words of each length `0..=n`, written to `out[0..=n]`.
 * Nondeterministic automata are determinized first.
 *
 * # Safety
 * `f` must be a live automaton handle and `out` must have room for `n + 1`
 * values.
 */
int32_t gl_fsa_count_words(const GlFsa *f, size_t n, uint64_t *out);

/**
 * Exponential growth rate of the accepted language.
 *
 * # Safety
 * `f` must be a live automaton handle and `out` writable.
 */
int32_t gl_fsa_growth_rate(const GlFsa *f, double *out);

/**
 * Serializes the automaton to JSON (free with [`gl_string_free`]).
 *
 * # Safety
 * `f` must be a live automaton handle and `out` writable.
 */
int32_t gl_fsa_to_json(const GlFsa *f, char **out);

/**
 * Graphviz rendering of the automaton (free with [`gl_string_free`]).
 *
 * # Safety
 * `f` must be a live automaton handle and `out` writable.
 */
int32_t gl_fsa_to_dot(const GlFsa *f, char **out);

/**
 * Reads an automaton from the JSON produced by [`gl_fsa_to_json`].
 *
 * # Safety
 * `json` must be nul-terminated and `out` writable.
 */
int32_t gl_fsa_from_json(const char *json, GlFsa **out);

#endif  /* GEOLANG_H */
