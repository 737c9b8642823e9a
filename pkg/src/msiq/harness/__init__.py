from .experiments import (
    run_ablation,
    run_benchmark_dir,
    run_controlled_sr,
    run_exp1,
    run_exp2,
    summarize_ablation,
    summarize_controlled,
    summarize_degradation_records,
    summarize_exp1,
    verify_sanity,
)
from .records import (
    CSV_HEADER,
    ExperimentRecord,
    ExperimentReport,
    read_records_json,
    sort_records,
)
from .testset import load_images_from_dir, standard_test_images

__all__ = [
    "CSV_HEADER",
    "ExperimentRecord",
    "ExperimentReport",
    "load_images_from_dir",
    "read_records_json",
    "run_ablation",
    "run_benchmark_dir",
    "run_controlled_sr",
    "run_exp1",
    "run_exp2",
    "sort_records",
    "standard_test_images",
    "summarize_ablation",
    "summarize_controlled",
    "summarize_degradation_records",
    "summarize_exp1",
    "verify_sanity",
]
