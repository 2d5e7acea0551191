from .csv_tables import (
    GRID_HEADER,
    TRIALS_HEADER,
    FACTORS_HEADER,
    CV_HEADER,
    HOLDOUT_HEADER,
    RESULTS_HEADER,
    LANDSCAPE_HEADER,
    EVALUATION_HEADER,
    SCORES_HEADER,
    RECOVERY_HEADER,
    ORACLE_HEADER,
    ResultRow,
    write_rows,
    read_rows,
    write_grid,
    write_trials,
    read_trials,
    write_factors,
    read_factors,
    write_cv_report,
    write_holdout,
    write_results,
    read_results,
    write_landscape,
    read_landscape,
    write_evaluation,
    write_scores,
    write_recovery,
    write_oracle,
)

__all__ = [
    # Headers
    "GRID_HEADER",
    "TRIALS_HEADER",
    "FACTORS_HEADER",
    "CV_HEADER",
    "HOLDOUT_HEADER",
    "RESULTS_HEADER",
    "LANDSCAPE_HEADER",
    "EVALUATION_HEADER",
    "SCORES_HEADER",
    "RECOVERY_HEADER",
    "ORACLE_HEADER",
    # Rows
    "ResultRow",
    # Functions
    "write_rows",
    "read_rows",
    "write_grid",
    "write_trials",
    "read_trials",
    "write_factors",
    "read_factors",
    "write_cv_report",
    "write_holdout",
    "write_results",
    "read_results",
    "write_landscape",
    "read_landscape",
    "write_evaluation",
    "write_scores",
    "write_recovery",
    "write_oracle",
]
