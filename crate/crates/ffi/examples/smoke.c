#include <stdio.h>
#include <string.h>
#include <assert.h>
#include "ruralcov.h"

int main(void) {
    ruralcov_config_t *cfg = ruralcov_config_default(3);
    assert(cfg != NULL);
    assert(ruralcov_config_set(cfg, "run.n_trials", "100") == RURALCOV_OK);
    assert(ruralcov_config_set(cfg, "bogus.key", "1") == RURALCOV_ERR_CONFIG);
    printf("expected error: %s\n", ruralcov_last_error());

    ruralcov_result_t *result = NULL;
    assert(ruralcov_run(cfg, &result) == RURALCOV_OK);
    size_t n = ruralcov_result_len(result);
    assert(n == 8);
    for (size_t i = 0; i < n; i++) {
        ruralcov_row_t row;
        assert(ruralcov_result_row(result, i, &row) == RURALCOV_OK);
        printf("%g %s p=%.4f [%.4f, %.4f]\n", row.sweep_value,
               ruralcov_result_mode(result, i), row.p_cov, row.ci_low, row.ci_high);
        assert(row.ci_low <= row.p_cov && row.p_cov <= row.ci_high);
    }
    char *csv = ruralcov_result_csv(result);
    assert(strncmp(csv, "sweep_value,mode", 16) == 0);
    ruralcov_string_free(csv);
    ruralcov_result_free(result);
    ruralcov_config_free(cfg);
    printf("C smoke test passed\n");
    return 0;
}
