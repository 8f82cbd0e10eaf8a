#ifndef HOP_H
#define HOP_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/*
 Starter kind for `hop_search`; `AUTO` tries the kinds the catalog suggests.
 */
typedef enum HopKind {
  HOP_KIND_AUTO = 0,
  HOP_KIND_ONE = 1,
  HOP_KIND_TWO = 2,
  HOP_KIND_THREE = 3,
} HopKind;

typedef enum HopStatus {
  HOP_STATUS_OK = 0,
  HOP_STATUS_NULL_ARGUMENT = 1,
  HOP_STATUS_INVALID_UTF8 = 2,
  HOP_STATUS_PARSE_ERROR = 3,
  HOP_STATUS_VERIFICATION_FAILED = 4,
  HOP_STATUS_NOT_FOUND = 5,
  HOP_STATUS_INVALID_ARGUMENT = 6,
  HOP_STATUS_INDEX_OUT_OF_RANGE = 7,
  HOP_STATUS_PANIC = 8,
} HopStatus;

/*
 Opaque list of parsed starter records.
 */
typedef struct HopRecords HopRecords;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/*
 Description of the last failure on this thread; empty after a success.
 The pointer stays valid until the next call into the library on this
 thread.
 */
const char *hop_last_error(void);

/*
 # Safety
 `s` must come from this library and not have been freed.
 */
void hop_string_free(char *s);

/*
 Parses starter records from NUL-terminated text.

 # Safety
 `text` must be a valid C string and `out` writable.
 */
enum HopStatus hop_records_parse(const char *text, struct HopRecords **out);

/*
 Records of a shipped fixture file such as `"appendix_b"`.

 # Safety
 `name` must be a valid C string and `out` writable.
 */
enum HopStatus hop_records_fixture(const char *name, struct HopRecords **out);

/*
 # Safety
 `records` must be null or a live handle.
 */
size_t hop_records_len(const struct HopRecords *records);

/*
 # Safety
 `records` must be null or a handle not yet freed.
 */
void hop_records_free(struct HopRecords *records);

/*
 Identifier of a record, for example `n10[4,2,2,2]/one`.

 # Safety
 `records` must be a live handle and `out` writable.
 */
enum HopStatus hop_record_id(const struct HopRecords *records, size_t index, char **out);

/*
 Runs the full chain on one record: starter conditions, expansion,
 factorization check and, if `with_lift`, the seating lift.
 `HOP_STATUS_VERIFICATION_FAILED` carries the report in `hop_last_error`.

 # Safety
 `records` must be a live handle.
 */
enum HopStatus hop_record_verify(const struct HopRecords *records, size_t index, bool with_lift);

/*
 The verified factorization of a record in the text format.

 # Safety
 `records` must be a live handle and `out` writable.
 */
enum HopStatus hop_record_expand(const struct HopRecords *records, size_t index, char **out);

/*
 The verified seating schedule of a record in the text format.

 # Safety
 `records` must be a live handle and `out` writable.
 */
enum HopStatus hop_record_lift(const struct HopRecords *records, size_t index, char **out);

/*
 All records of a handle in the text format.

 # Safety
 `records` must be a live handle and `out` writable.
 */
enum HopStatus hop_records_serialize(const struct HopRecords *records, char **out);

/*
 Searches for a starter of type `cycle_type` (for example `"4,3,3"`).
 A negative `seed` disables shuffling. On success `out` receives a handle
 holding the one verified record; `HOP_STATUS_NOT_FOUND` means the search
 was exhausted or ran out of budget.

 # Safety
 `cycle_type` must be a valid C string and `out` writable.
 */
enum HopStatus hop_search(size_t n,
                          const char *cycle_type,
                          enum HopKind kind,
                          uint64_t max_nodes,
                          double max_seconds,
                          int64_t seed,
                          struct HopRecords **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* HOP_H */
