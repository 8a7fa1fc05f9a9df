/* SPDX-License-Identifier: Apache-2.0 */

/* C interface to the bwsts analysis library. All objects are opaque and
 * owned by the caller once returned; release them with the matching _free
 * function. Functions returning bwsts_status record a message retrievable
 * with bwsts_last_error() (per thread) when they fail. */

#ifndef BWSTS_H
#define BWSTS_H

#include <stddef.h>

#if defined(_WIN32)
#  if defined(BWSTS_BUILDING)
#    define BWSTS_API __declspec(dllexport)
#  else
#    define BWSTS_API __declspec(dllimport)
#  endif
#else
#  define BWSTS_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum bwsts_status {
    BWSTS_OK = 0,
    BWSTS_ERR_INVALID_ARGUMENT = 1, /* null pointer, bad option value */
    BWSTS_ERR_PARSE = 2,            /* model text rejected */
    BWSTS_ERR_USAGE = 3,            /* analysis does not fit the model */
    BWSTS_ERR_IO = 4,               /* file could not be read */
    BWSTS_ERR_CONTRACT = 5,         /* operation outside its supported fragment */
    BWSTS_ERR_INTERNAL = 6
} bwsts_status;

typedef enum bwsts_model_kind { BWSTS_COUNTER = 0, BWSTS_FIFO = 1 } bwsts_model_kind;

typedef struct bwsts_model bwsts_model;
typedef struct bwsts_report bwsts_report;

typedef struct bwsts_check_options {
    size_t budget;      /* nodes / steps; 0 is rejected */
    const char* target; /* "q:(1,2)" or "q:\"ab\"@c"; may be NULL */
    int assert_strict_monotone;
    int assert_cover_monotone;
    int want_dot;
} bwsts_check_options;

BWSTS_API const char* bwsts_version(void);

/* Message of the last failure on this thread; "" when none. */
BWSTS_API const char* bwsts_last_error(void);
/* 1-based position of the last parse error on this thread; 0 when unknown. */
BWSTS_API size_t bwsts_last_error_line(void);
BWSTS_API size_t bwsts_last_error_column(void);

BWSTS_API bwsts_status bwsts_model_parse(const char* text, bwsts_model** out);
BWSTS_API bwsts_status bwsts_model_load(const char* path, bwsts_model** out);
BWSTS_API void bwsts_model_free(bwsts_model* model);
BWSTS_API bwsts_model_kind bwsts_model_get_kind(const bwsts_model* model);
BWSTS_API const char* bwsts_model_name(const bwsts_model* model);
/* Canonical text; release with bwsts_string_free. */
BWSTS_API bwsts_status bwsts_model_print(const bwsts_model* model, char** out);

BWSTS_API void bwsts_check_options_init(bwsts_check_options* options);

/* analysis: boundedness | termination | nonterm-iterable | cmrz | x0-cover */
BWSTS_API bwsts_status bwsts_check(const bwsts_model* model, const char* analysis,
                                   const bwsts_check_options* options, bwsts_report** out);
BWSTS_API void bwsts_report_free(bwsts_report* report);
/* 0 definite verdict, 2 inconclusive. */
BWSTS_API int bwsts_report_exit_code(const bwsts_report* report);
BWSTS_API const char* bwsts_report_verdict(const bwsts_report* report);
BWSTS_API const char* bwsts_report_json(const bwsts_report* report);
BWSTS_API const char* bwsts_report_text(const bwsts_report* report);
/* "" unless DOT output was requested and the analysis builds a tree. */
BWSTS_API const char* bwsts_report_dot(const bwsts_report* report);

/* Product of a fully bounded FIFO model with its send and receive automata.
 * `text` (optional) receives the printed product including the letter map;
 * release it with bwsts_string_free. */
BWSTS_API bwsts_status bwsts_product(const bwsts_model* model, int prune, bwsts_model** out, char** text);

BWSTS_API void bwsts_string_free(char* s);

#ifdef __cplusplus
}
#endif

#endif /* BWSTS_H */
