#ifndef QDISYNTH_H
#define QDISYNTH_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum QdiIoClass {
  QDI_IO_CLASS_STRONG = 0,
  QDI_IO_CLASS_WEAK = 1,
  QDI_IO_CLASS_EARLY = 2,
} QdiIoClass;

typedef enum QdiMethod {
  QDI_METHOD_DIMS = 0,
  QDI_METHOD_FDIMS = 1,
  QDI_METHOD_SAFE = 2,
} QdiMethod;

typedef enum QdiPhase {
  QDI_PHASE_SET = 0,
  QDI_PHASE_RESET = 1,
} QdiPhase;

typedef enum QdiStatus {
  QDI_STATUS_OK = 0,
  QDI_STATUS_NULL_POINTER = 1,
  QDI_STATUS_INVALID_UTF8 = 2,
  /**
   * Malformed truth table, netlist JSON or name.
   */
  QDI_STATUS_PARSE = 3,
  /**
   * Structurally invalid netlist.
   */
  QDI_STATUS_VALIDATION = 4,
  QDI_STATUS_SYNTHESIS = 5,
  /**
   * Simulation or analysis failure, including the input-count cap.
   */
  QDI_STATUS_ANALYSIS = 6,
  QDI_STATUS_INVALID_ARGUMENT = 7,
  /**
   * A Rust panic was caught at the boundary.
   */
  QDI_STATUS_INTERNAL = 8,
} QdiStatus;

/**
 * Opaque single-output Boolean function.
 */
typedef struct QdiFunction QdiFunction;

/**
 * Opaque validated netlist.
 */
typedef struct QdiNetlist QdiNetlist;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message describing the last failed call on this thread, or NULL.
 *
 * The pointer stays valid until the next failing call on the same thread.
 */
const char *qdi_last_error_message(void);

/**
 * Parses the `n=<k>` truth-table text format.
 *
 * # Safety
 * `text` must be a NUL-terminated string and `out` a valid pointer.
 */
enum QdiStatus qdi_function_from_text(const char *text, struct QdiFunction **out);

/**
 * Builds a function from `2^n` bytes, one per assignment; nonzero means 1.
 *
 * # Safety
 * `bits` must point to `len` readable bytes and `out` must be valid.
 */
enum QdiStatus qdi_function_from_bits(size_t n,
                                      const uint8_t *bits,
                                      size_t len,
                                      struct QdiFunction **out);

/**
 * # Safety
 * `f` must be NULL or a pointer returned by a `qdi_function_*` constructor.
 */
void qdi_function_free(struct QdiFunction *f);

/**
 * Synthesizes a dual-rail netlist. `or_fanin` of 0 builds one wide OR per rail.
 *
 * # Safety
 * `f` must be a live function handle and `out` a valid pointer.
 */
enum QdiStatus qdi_synthesize(const struct QdiFunction *f,
                              enum QdiMethod method,
                              size_t or_fanin,
                              struct QdiNetlist **out);

/**
 * Builds a named reference netlist: `fig3`, `fig4`, `fig5` or `early-and2`.
 *
 * # Safety
 * `name` must be a NUL-terminated string and `out` a valid pointer.
 */
enum QdiStatus qdi_netlist_fixture(const char *name, size_t or_fanin, struct QdiNetlist **out);

/**
 * # Safety
 * `json` must be a NUL-terminated string and `out` a valid pointer.
 */
enum QdiStatus qdi_netlist_from_json(const char *json, struct QdiNetlist **out);

/**
 * Serializes the netlist; release the string with [`qdi_string_free`].
 *
 * # Safety
 * `nl` must be a live netlist handle and `out` a valid pointer.
 */
enum QdiStatus qdi_netlist_to_json(const struct QdiNetlist *nl, char **out);

/**
 * # Safety
 * `nl` must be NULL or a pointer returned by a netlist constructor.
 */
void qdi_netlist_free(struct QdiNetlist *nl);

/**
 * # Safety
 * `s` must be NULL or a string returned by this library.
 */
void qdi_string_free(char *s);

/**
 * Number of primary inputs of the netlist, or 0 for NULL.
 *
 * # Safety
 * `nl` must be NULL or a live netlist handle.
 */
size_t qdi_netlist_inputs(const struct QdiNetlist *nl);

/**
 * Evaluates the first output pair under a valid codeword. Bit `i-1` of
 * `assignment` is the value of input `i`.
 *
 * # Safety
 * `nl` must be a live netlist handle; `rail1` and `rail0` must be valid pointers.
 */
enum QdiStatus qdi_netlist_eval(const struct QdiNetlist *nl,
                                uint32_t assignment,
                                bool *rail1,
                                bool *rail0);

/**
 * Counts the codewords whose transaction leaves an orphan in `phase`.
 *
 * # Safety
 * `nl` must be a live netlist handle and `out` a valid pointer.
 */
enum QdiStatus qdi_netlist_orphan_rows(const struct QdiNetlist *nl,
                                       enum QdiPhase phase,
                                       size_t *out);

/**
 * Full per-codeword orphan table for both phases as JSON.
 *
 * # Safety
 * `nl` must be a live netlist handle and `out` a valid pointer.
 */
enum QdiStatus qdi_netlist_orphans_json(const struct QdiNetlist *nl, char **out);

/**
 * Input/output indication class. `exhaustive` checks every proper input subset
 * instead of only the maximal ones.
 *
 * # Safety
 * `nl` must be a live netlist handle and `out` a valid pointer.
 */
enum QdiStatus qdi_netlist_classify(const struct QdiNetlist *nl,
                                    bool exhaustive,
                                    enum QdiIoClass *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* QDISYNTH_H */
