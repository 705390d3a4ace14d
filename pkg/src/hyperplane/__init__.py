"""
Hyperplane - separating planes in feature space.

Contains:
- feature_map: FeatureMap, feature vectors, plane checks
- search: cutting-plane search for I - sum_i a_i rho_i witnesses
"""

from .feature_map import FeatureMap, PlaneCheck, check_plane, feature_vector, product_features
from .search import SearchConfig, SearchRound, SeparatingResult, fixed_plane_value, search

__all__ = [
    'FeatureMap', 'PlaneCheck', 'check_plane', 'feature_vector', 'product_features',
    'SearchConfig', 'SearchRound', 'SeparatingResult', 'fixed_plane_value', 'search',
]
