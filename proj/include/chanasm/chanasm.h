/*
 * Copyright 2026 The chanasm Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef CHANASM_CHANASM_H_
#define CHANASM_CHANASM_H_

#include <stddef.h>

#if defined(_WIN32)
#if defined(CHANASM_BUILDING_LIBRARY)
#define CHANASM_API __declspec(dllexport)
#else
#define CHANASM_API __declspec(dllimport)
#endif
#else
#define CHANASM_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Return codes of every function that can fail. */
typedef enum chanasm_error {
  CHANASM_OK = 0,
  CHANASM_ERR_NULL_ARGUMENT = 1,
  CHANASM_ERR_INVALID_ARGUMENT = 2,
  CHANASM_ERR_PARSE = 3,
  CHANASM_ERR_NOT_AVAILABLE = 4,
  CHANASM_ERR_INTERNAL = 5
} chanasm_error;

/* Report status; the numeric values are the command-line exit codes. */
typedef enum chanasm_outcome {
  CHANASM_PASS = 0,
  CHANASM_FAIL = 1,
  CHANASM_INCONCLUSIVE = 2,
  CHANASM_INPUT_ERROR = 3
} chanasm_outcome;

typedef struct chanasm_document chanasm_document;
typedef struct chanasm_report chanasm_report;

typedef struct chanasm_options {
  double abs_tol;
  double rank_rel_tol;
  double nnls_residual_tol;
  /* verify: "ns", "asym" or "cptp"; extremality: "full" or "asym". NULL picks the default. */
  const char* mode;
  int key_x;
  int key_y;
} chanasm_options;

CHANASM_API const char* chanasm_version(void);

/* Fills the default tolerances, a NULL mode and key setting (0, 0). */
CHANASM_API void chanasm_options_init(chanasm_options* options);

/* Message for the last error returned on the calling thread, or "". */
CHANASM_API const char* chanasm_last_error(void);

/* Strings returned through char** out-parameters are owned by the caller. */
CHANASM_API void chanasm_string_free(char* s);

CHANASM_API chanasm_error chanasm_document_parse(const char* text, size_t length,
                                                 const chanasm_options* options,
                                                 chanasm_document** out);
CHANASM_API chanasm_error chanasm_document_serialize(const chanasm_document* doc, char** out);
CHANASM_API const char* chanasm_document_kind(const chanasm_document* doc);
CHANASM_API void chanasm_document_free(chanasm_document* doc);

/* Commands take the document text. Malformed documents yield a report with
 * status CHANASM_INPUT_ERROR rather than an error code. */
CHANASM_API chanasm_error chanasm_verify(const char* text, size_t length,
                                         const chanasm_options* options, chanasm_report** out);
CHANASM_API chanasm_error chanasm_choi(const char* text, size_t length,
                                       const chanasm_options* options, chanasm_report** out);
CHANASM_API chanasm_error chanasm_extremality(const char* text, size_t length,
                                              const chanasm_options* options,
                                              chanasm_report** out);
CHANASM_API chanasm_error chanasm_lhs(const char* text, size_t length,
                                      const chanasm_options* options, chanasm_report** out);
CHANASM_API chanasm_error chanasm_security_cert(const char* text, size_t length,
                                                const chanasm_options* options,
                                                chanasm_report** out);
/* target: "example1", "asym-nonextremal", "appendix" or "key". */
CHANASM_API chanasm_error chanasm_reproduce(const char* target, const chanasm_options* options,
                                            chanasm_report** out);
CHANASM_API chanasm_error chanasm_schema(char** out);

/* Names of the bundled fixtures, newline separated. */
CHANASM_API chanasm_error chanasm_fixture_names(char** out);
CHANASM_API chanasm_error chanasm_fixture(const char* name, char** out);

CHANASM_API chanasm_outcome chanasm_report_outcome(const chanasm_report* report);
CHANASM_API chanasm_error chanasm_report_json(const chanasm_report* report, char** out);
CHANASM_API chanasm_error chanasm_report_text(const chanasm_report* report, char** out);
/* CHANASM_ERR_NOT_AVAILABLE when the command produced no artifact. */
CHANASM_API chanasm_error chanasm_report_artifact(const chanasm_report* report, char** out);
CHANASM_API void chanasm_report_free(chanasm_report* report);

#ifdef __cplusplus
}
#endif

#endif /* CHANASM_CHANASM_H_ */
