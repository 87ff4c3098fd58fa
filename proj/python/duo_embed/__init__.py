"""Joint kernel embeddings of two datasets through a duo-landmark kernel."""

from ._core import (
    ConfigError,
    DegenerateError,
    DuoError,
    IndexError,
    IoError,
    ShapeError,
    bulk_eigenvalues,
    cross_sq_distances,
    detect_noise_regime,
    duo_kernel,
    duo_svd,
    extend,
    free_conv_quantiles,
    hierarchical_cluster,
    jaccard_concordance,
    kmeans,
    mp_edges,
    pca_embed,
    rand_index,
    run,
    sample_negative_control,
    sample_pure_noise_pair,
    sample_setting,
    sample_torus_pair,
    screen_alignability,
)

__version__ = "0.1.0"

__all__ = [
    "ConfigError",
    "DegenerateError",
    "DuoError",
    "IndexError",
    "IoError",
    "ShapeError",
    "bulk_eigenvalues",
    "cross_sq_distances",
    "detect_noise_regime",
    "duo_kernel",
    "duo_svd",
    "extend",
    "free_conv_quantiles",
    "hierarchical_cluster",
    "jaccard_concordance",
    "kmeans",
    "mp_edges",
    "pca_embed",
    "rand_index",
    "run",
    "sample_negative_control",
    "sample_pure_noise_pair",
    "sample_setting",
    "sample_torus_pair",
    "screen_alignability",
]
