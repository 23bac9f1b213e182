/* C interface to the nlctc engine: nonlocal boxes under CTC constraints.
 *
 * Objects are opaque handles released with the matching *_free function.
 * Every fallible call returns an nlctc_status; on failure a message is
 * available from nlctc_last_error() until the next call on the same thread.
 * Strings returned through char** are heap-allocated and must be released
 * with nlctc_string_free(). Parties are given as bitmasks (bit i = party i;
 * Alice = 0, Bob = 1, Charlie = 2). Bit tuples are arrays of 0/1 bytes in
 * party order. */
#ifndef NLCTC_H
#define NLCTC_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(NLCTC_BUILDING)
#    define NLCTC_API __declspec(dllexport)
#  else
#    define NLCTC_API __declspec(dllimport)
#  endif
#else
#  define NLCTC_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum nlctc_status {
  NLCTC_OK = 0,
  NLCTC_ERR_INVALID_ARGUMENT = 1,
  NLCTC_ERR_ARITY = 2,
  NLCTC_ERR_PARSE = 3,
  NLCTC_ERR_INVARIANT = 4,
  NLCTC_ERR_NOT_PARITY = 5,
  NLCTC_ERR_PARADOX = 6,
  NLCTC_ERR_NO_CONVERGENCE = 7,
  NLCTC_ERR_DIMENSION = 8,
  NLCTC_ERR_NOT_DENSITY = 9,
  NLCTC_ERR_NOT_UNITARY = 10,
  NLCTC_ERR_NOT_PERMUTATION = 11,
  NLCTC_ERR_IO = 12,
  NLCTC_ERR_INTERNAL = 99
} nlctc_status;

typedef struct nlctc_box nlctc_box;   /* conditional table p(out | in) */
typedef struct nlctc_cbox nlctc_cbox; /* table after CTC pinning */

NLCTC_API const char* nlctc_version(void);
NLCTC_API const char* nlctc_last_error(void);
NLCTC_API const char* nlctc_status_string(nlctc_status status);
NLCTC_API void nlctc_string_free(char* s);

/* Party lists such as "alice,bob" or "0,2" ("" is the empty set). */
NLCTC_API nlctc_status nlctc_parse_parties(const char* list, uint32_t* mask);

/* ---- boxes ---------------------------------------------------------------- */

NLCTC_API int nlctc_named_box_count(void);
NLCTC_API const char* nlctc_named_box_name(int index);

/* "pr", "svetlichny", "mermin1", "mermin2". */
NLCTC_API nlctc_status nlctc_box_named(const char* name, nlctc_box** out);
/* Named box, or "spec:<path>" for a box spec file. */
NLCTC_API nlctc_status nlctc_box_open(const char* selector, nlctc_box** out);
/* Parity box: XOR(outputs) = XOR over monomials; each mask is one AND monomial. */
NLCTC_API nlctc_status nlctc_box_parity(int parties, const uint32_t* monomials, size_t count,
                                        nlctc_box** out);
NLCTC_API nlctc_status nlctc_box_from_json(const char* text, nlctc_box** out);
NLCTC_API nlctc_status nlctc_box_load(const char* path, nlctc_box** out);
NLCTC_API void nlctc_box_free(nlctc_box* box);

NLCTC_API int nlctc_box_parties(const nlctc_box* box);
NLCTC_API nlctc_status nlctc_box_probability(const nlctc_box* box, const uint8_t* inputs,
                                             const uint8_t* outputs, int64_t* num, int64_t* den);
NLCTC_API nlctc_status nlctc_box_to_json(const nlctc_box* box, char** out);
/* *no_signaling is 1 or 0; witness_json (may be NULL) receives the witness
 * object on failure, or "null". */
NLCTC_API nlctc_status nlctc_box_check_no_signaling(const nlctc_box* box, int* no_signaling,
                                                    char** witness_json);
NLCTC_API nlctc_status nlctc_box_chsh(const nlctc_box* box, int64_t* num, int64_t* den);
/* Law left on the unpinned parties, e.g. "a = x.y ^ y". */
NLCTC_API nlctc_status nlctc_box_closed_form(const nlctc_box* box, uint32_t ctc_mask, char** relation,
                                             int* verified);

/* ---- CTC pinning and signaling -------------------------------------------- */

NLCTC_API nlctc_status nlctc_apply_ctc(const nlctc_box* box, uint32_t ctc_mask, nlctc_cbox** out);
NLCTC_API void nlctc_cbox_free(nlctc_cbox* cbox);
NLCTC_API int nlctc_cbox_has_paradox(const nlctc_cbox* cbox);
NLCTC_API nlctc_status nlctc_cbox_format_table(const nlctc_cbox* cbox, char** out);
NLCTC_API nlctc_status nlctc_cbox_to_json(const nlctc_cbox* cbox, const char* name, char** out);

/* Report for one sender and coalition (as_json selects JSON vs text). */
NLCTC_API nlctc_status nlctc_detect_signaling(const nlctc_cbox* cbox, int sender, uint32_t coalition_mask,
                                              const char* name, int as_json, char** out);
/* Every sender against every coalition of the other parties. */
NLCTC_API nlctc_status nlctc_full_scan(const nlctc_cbox* cbox, const char* name, int as_json,
                                       char** out, int* dependent_pairs);

/* ---- Deutsch fixed point -------------------------------------------------- */

/* Matrices use the JSON matrix format; result is a FixedPointResult object. */
NLCTC_API nlctc_status nlctc_deutsch_solve(const char* unitary_json, const char* rho_json, double tol,
                                           long max_iter, char** result_json);
NLCTC_API nlctc_status nlctc_deutsch_crosscheck(const char* unitary_json, const char* rho_json,
                                                char** result_json, int* passed);
/* "swap", "identity", "cnot", "grandfather" (I (x) X) as unitary JSON on two qubits. */
NLCTC_API nlctc_status nlctc_builtin_unitary(const char* name, char** unitary_json);

/* ---- table reproduction --------------------------------------------------- */

NLCTC_API int nlctc_table_count(void);
NLCTC_API const char* nlctc_table_id(int index);
NLCTC_API const char* nlctc_table_caption(int index);
/* *matches is 1 when the computed table equals the published one. */
NLCTC_API nlctc_status nlctc_reproduce(const char* table_id, int as_json, char** out, int* matches);

#ifdef __cplusplus
}
#endif

#endif /* NLCTC_H */
