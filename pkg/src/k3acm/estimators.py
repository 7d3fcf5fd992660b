"""scikit-learn style wrappers.

Rows of ``X`` are divisor classes in lattice coordinates.  ``fit`` does no
learning: it validates the lattice and the reference class and stores the
validated objects, so the estimators compose with pipelines and
``get_params``/``set_params`` like any other.
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, ClassifierMixin, TransformerMixin
from sklearn.utils.validation import check_array, check_is_fitted

from .acm import classify_thm12, is_acm, is_initialized
from .cohomology import cohomology_dims, neg_two_cache
from .lattice import DivisorClass, make_lattice, pair
from .polarization import require_very_ample


def check_classes(X, rank: int) -> list[DivisorClass]:
    """Validate a 2-D integer array of classes of the given rank."""
    arr = check_array(X, dtype=None, ensure_2d=True, ensure_all_finite=True)
    if arr.shape[1] != rank:
        raise ValueError(f"X has {arr.shape[1]} columns, lattice rank is {rank}")
    if arr.dtype.kind not in "iu":
        if arr.dtype.kind != "f" or not np.all(np.equal(np.mod(arr, 1), 0)):
            raise ValueError("divisor classes must have integer coordinates")
    return [DivisorClass(tuple(int(v) for v in row)) for row in arr]


class CohomologyTransformer(TransformerMixin, BaseEstimator):
    """Map classes to their ``(h^0, h^1, h^2)`` rows.

    Parameters
    ----------
    gram : array-like of shape (rank, rank)
        Gram matrix of the Picard lattice.
    ample : array-like of shape (rank,)
        Ample reference class fixing the ample cone.
    """

    def __init__(self, gram, ample):
        self.gram = gram
        self.ample = ample

    def fit(self, X=None, y=None):
        self.lattice_ = make_lattice(self.gram)
        self.ample_ = DivisorClass(tuple(int(v) for v in self.ample))
        self.n_features_in_ = self.lattice_.rank
        top = 1
        if X is not None:
            for d in check_classes(X, self.lattice_.rank):
                top = max(top, abs(pair(self.lattice_, self.ample_, d)))
        neg_two_cache(self.lattice_, self.ample_, top)
        return self

    def transform(self, X):
        check_is_fitted(self, "lattice_")
        classes = check_classes(X, self.lattice_.rank)
        return np.array(
            [cohomology_dims(self.lattice_, self.ample_, d).as_tuple() for d in classes],
            dtype=np.int64,
        ).reshape(len(classes), 3)


class ACMClassifier(ClassifierMixin, BaseEstimator):
    """Predict whether effective classes are ACM and initialized.

    ``predict`` uses the cohomology scan; ``predict_case`` gives the
    numerical case label (``'a'`` .. ``'d'`` or ``None``).
    """

    def __init__(self, gram, polarization):
        self.gram = gram
        self.polarization = polarization

    def fit(self, X=None, y=None):
        self.lattice_ = make_lattice(self.gram)
        self.polarization_ = require_very_ample(
            self.lattice_, DivisorClass(tuple(int(v) for v in self.polarization))
        )
        self.n_features_in_ = self.lattice_.rank
        self.classes_ = np.array([False, True])
        return self

    def predict(self, X):
        check_is_fitted(self, "lattice_")
        lat, h = self.lattice_, self.polarization_
        return np.array(
            [is_acm(lat, h, d) and is_initialized(lat, h, d) for d in check_classes(X, lat.rank)],
            dtype=bool,
        )

    def predict_case(self, X):
        check_is_fitted(self, "lattice_")
        lat, h = self.lattice_, self.polarization_
        out = []
        for d in check_classes(X, lat.rank):
            case = classify_thm12(lat, h, d)
            out.append(case.value if case is not None else None)
        return np.array(out, dtype=object)
