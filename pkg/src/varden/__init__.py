"""Density-based clustering: fixed-parameter scans, an adaptive escalation
loop for mixed-density data, seeded synthetic scenarios, evaluation metrics,
and deterministic CSV/SVG output."""

__version__ = "0.1.0"

from .model import (
    AdaptiveResult,
    AdbscanParams,
    DataError,
    Dataset,
    DbscanParams,
    Labeling,
    LabeledDataset,
    NOISE,
    ParamError,
    Point,
    PointClass,
    VardenError,
    validate_dataset,
    validate_labeling,
)
from .neighborhood import build_index, dataset_diameter, region_query, region_query_naive
from .dbscan import (
    classify_point,
    is_density_connected,
    is_density_reachable,
    is_directly_density_reachable,
    run_dbscan,
)
from .adbscan import accept_cluster, remove_cluster, run_adbscan, step_params
from .synthgen import (
    BlobSpec,
    ScenarioSpec,
    SCENARIO_NAMES,
    gen_scenario,
    paper_scenario,
    parse_scenario,
    format_scenario,
)
from .metrics import EvalReport, adjusted_rand_index, evaluate
from .dataio import (
    RunManifest,
    dataset_hash,
    format_manifest,
    parse_manifest,
    read_csv,
    write_csv,
    write_dataset_csv,
    write_manifest,
)
from .render import PALETTE, render_svg

__all__ = [
    "AdaptiveResult",
    "AdbscanParams",
    "BlobSpec",
    "DataError",
    "Dataset",
    "DbscanParams",
    "EvalReport",
    "Labeling",
    "LabeledDataset",
    "NOISE",
    "PALETTE",
    "ParamError",
    "Point",
    "PointClass",
    "RunManifest",
    "ScenarioSpec",
    "SCENARIO_NAMES",
    "VardenError",
    "accept_cluster",
    "adjusted_rand_index",
    "build_index",
    "classify_point",
    "dataset_diameter",
    "dataset_hash",
    "evaluate",
    "format_manifest",
    "format_scenario",
    "gen_scenario",
    "is_density_connected",
    "is_density_reachable",
    "is_directly_density_reachable",
    "paper_scenario",
    "parse_manifest",
    "parse_scenario",
    "read_csv",
    "region_query",
    "region_query_naive",
    "remove_cluster",
    "run_adbscan",
    "run_dbscan",
    "step_params",
    "validate_dataset",
    "validate_labeling",
    "write_csv",
    "write_dataset_csv",
    "write_manifest",
]
