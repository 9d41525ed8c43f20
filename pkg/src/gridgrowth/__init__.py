"""Generative growth model for power-grid topologies.

Nodes are born one at a time at uniform positions on a disk and link to
their K nearest predecessors. The package grows such networks, predicts
their degree laws, measures diameter and betweenness, fits exponential
mixtures to degree histograms and runs SIS/SIR contagion on any graph.
"""

__version__ = "0.1.0"

from .graph import DegreeHistogram, Graph, complete_graph, path_graph, star_graph
from .growth import (GrowthConfig, KDistribution, Point, degree_histogram, grow,
                     k_nearest, sample_position)
from .meanfield import (ExponentialMixture, asymptotic_fraction, cdf_at, discrete_law,
                        mixture_mean_degree, pdf_at)
from .metrics import (BetweennessResult, DiameterReport, betweenness, betweenness_pdf,
                      diameter, diameter_scaling, log_fit)
from .fitting import FitResult, fit_mixture, ks_distance
from .epidemics import EpidemicConfig, EpidemicTrace, compare_traces, simulate

__all__ = [
    "DegreeHistogram", "Graph", "complete_graph", "path_graph", "star_graph",
    "GrowthConfig", "KDistribution", "Point", "degree_histogram", "grow", "k_nearest",
    "sample_position", "ExponentialMixture", "asymptotic_fraction", "cdf_at",
    "discrete_law", "mixture_mean_degree", "pdf_at", "BetweennessResult",
    "DiameterReport", "betweenness", "betweenness_pdf", "diameter", "diameter_scaling",
    "log_fit", "FitResult", "fit_mixture", "ks_distance", "EpidemicConfig",
    "EpidemicTrace", "compare_traces", "simulate",
]
