#include <stdio.h>
#include <stdlib.h>
#include <string.h>

#include "ksum/ksum.h"

static int failures = 0;

#define EXPECT(cond)                                                  \
  do {                                                                \
    if (!(cond)) {                                                    \
      fprintf(stderr, "%s:%d: expected %s\n", __FILE__, __LINE__, #cond); \
      ++failures;                                                     \
    }                                                                 \
  } while (0)

static void solving(void) {
  ksum_context* ctx = NULL;
  char* psi = NULL;
  EXPECT(ksum_context_create(250, &ctx) == KSUM_OK);
  EXPECT(ksum_context_digits(ctx) == 250);
  EXPECT(ksum_solve_newton(ctx, "9/10", "pi/4", 20, &psi) == KSUM_OK);
  EXPECT(psi != NULL && strcmp(psi, "1.6800337357880455291") == 0);
  ksum_string_free(psi);
  psi = NULL;
  EXPECT(ksum_solve_series(ctx, "9/10", "pi/4", KSUM_WENIGER_DELTA, 40, KSUM_INDEXING_TABULATED, 12, &psi) ==
         KSUM_OK);
  EXPECT(psi != NULL && strcmp(psi, "1.68003373579") == 0);
  ksum_string_free(psi);
  psi = NULL;
  EXPECT(ksum_solve_newton(ctx, "1.5", "1", 10, &psi) == KSUM_ERR_DOMAIN);
  EXPECT(psi == NULL);
  EXPECT(strstr(ksum_last_error(), "eccentricity") != NULL);
  EXPECT(ksum_solve_newton(ctx, "9/1o", "1", 10, &psi) == KSUM_ERR_PARSE);
  EXPECT(ksum_solve_newton(NULL, "0.5", "1", 10, &psi) == KSUM_ERR_ARGUMENT);
  ksum_context_destroy(ctx);
  EXPECT(ksum_context_create(20, &ctx) == KSUM_ERR_CONFIG);
  EXPECT(ctx == NULL);
}

static void debye(void) {
  ksum_context* ctx = NULL;
  ksum_debye* table = NULL;
  char* text = NULL;
  int bad = 0;
  EXPECT(ksum_context_create(60, &ctx) == KSUM_OK);
  EXPECT(ksum_debye_create(4, &table) == KSUM_OK);
  EXPECT(ksum_debye_k_max(table) == 4);
  EXPECT(ksum_debye_eval(ctx, table, 1, "2", 10, &text) == KSUM_OK);
  EXPECT(text != NULL && strcmp(text, "-1.416666667") == 0); /* 2/8 - 5*8/24 */
  ksum_string_free(text);
  EXPECT(ksum_debye_eval(ctx, table, 5, "2", 10, &text) == KSUM_ERR_RANGE);
  EXPECT(ksum_debye_json(table, &text) == KSUM_OK);
  EXPECT(text != NULL && strstr(text, "\"-5/24\"") != NULL);
  ksum_string_free(text);
  EXPECT(ksum_debye_ratio_law(table, &bad) == KSUM_OK);
  EXPECT(bad == -1);
  ksum_debye_destroy(table);
  ksum_context_destroy(ctx);
}

static void tables(void) {
  ksum_context* ctx = NULL;
  char* csv = NULL;
  ksum_transform kind = KSUM_LEVIN_D;
  EXPECT(ksum_context_create(100, &ctx) == KSUM_OK);
  EXPECT(ksum_bessel_table_csv(ctx, 10, "1/2", 30, 10, &csv) == KSUM_OK);
  EXPECT(csv != NULL && strstr(csv, "\n30,-0.009444360750,0.001467802647,0.001467802647\n") != NULL);
  ksum_string_free(csv);
  EXPECT(ksum_parse_transform("weniger", &kind) == KSUM_OK);
  EXPECT(kind == KSUM_WENIGER_DELTA);
  EXPECT(ksum_parse_transform("pade", &kind) == KSUM_ERR_PARSE);
  EXPECT(ksum_u_scan_csv(ctx, "1/2", 20, KSUM_LEVIN_D, 4, KSUM_INDEXING_TABULATED, &csv) == KSUM_OK);
  EXPECT(csv != NULL && strncmp(csv, "t,x,u_value,order,eps\n", 22) == 0);
  ksum_string_free(csv);
  ksum_context_destroy(ctx);
}

static void harness(void) {
  ksum_run_config cfg = ksum_run_config_default();
  ksum_report* report = NULL;
  size_t n = 0;
  while (ksum_target_name(n) != NULL) ++n;
  EXPECT(n == 14);
  EXPECT(cfg.precision_digits == 250);
  cfg.output_path = "capi_table2.csv";
  EXPECT(ksum_reproduce(&cfg, "table2", &report) == KSUM_OK);
  EXPECT(ksum_report_passed(report) == 1);
  EXPECT(strcmp(ksum_report_artifact_path(report), "capi_table2.csv") == 0);
  EXPECT(strstr(ksum_report_summary(report), "88/88 matched") != NULL);
  ksum_report_destroy(report);
  remove("capi_table2.csv");
  EXPECT(ksum_reproduce(&cfg, "table9", &report) == KSUM_ERR_CONFIG);
  EXPECT(report == NULL);
  EXPECT(ksum_selfcheck(&cfg, KSUM_SELFCHECK_CORRUPT_DEBYE_ROW, &report) == KSUM_OK);
  EXPECT(ksum_report_passed(report) == 0);
  EXPECT(strstr(ksum_report_summary(report), "ratio law") != NULL);
  ksum_report_destroy(report);
}

int main(void) {
  solving();
  debye();
  tables();
  harness();
  if (failures > 0) {
    fprintf(stderr, "%d expectation(s) failed\n", failures);
    return 1;
  }
  printf("C interface: all expectations met\n");
  return 0;
}
