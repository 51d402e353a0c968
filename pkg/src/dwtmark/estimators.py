"""scikit-learn style transformers wrapping the watermark codec and attacks.

These make the pipeline composable with the wider ecosystem, e.g.:

    mark   = WatermarkEmbedder(watermark=logo, seed=42).fit()
    noisy  = AttackTransformer("gaussian:sigma=5,seed=1").fit()
    reader = WatermarkExtractor(seed=42, wm_width=32, wm_height=32).fit()
    bits   = reader.transform(noisy.transform(mark.transform(image)))

Nothing is learned from data; fit validates parameters and freezes the
derived key, following the stateless-transformer convention.  transform
accepts a single (h, w) image or an (n, h, w) batch.
"""

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.exceptions import NotFittedError

from .attacks import apply_attack, parse_attack_spec
from .codec import embed, extract
from .keystream import make_key
from .validation import check_watermark


def _per_image(func, X):
    arr = np.asarray(X)
    if arr.ndim == 2:
        return func(arr)
    if arr.ndim == 3:
        return np.stack([func(a) for a in arr])
    raise ValueError(f"expected a (h, w) image or (n, h, w) batch, got shape {arr.shape}")


class WatermarkEmbedder(BaseEstimator, TransformerMixin):
    """Writes a fixed binary mark into every image it transforms."""

    def __init__(
        self,
        watermark=None,
        seed=0,
        wavelet="db4",
        levels=4,
        q=4,
        select_threshold=0.5,
        perm_seed=None,
    ):
        self.watermark = watermark
        self.seed = seed
        self.wavelet = wavelet
        self.levels = levels
        self.q = q
        self.select_threshold = select_threshold
        self.perm_seed = perm_seed

    def fit(self, X=None, y=None):
        if self.watermark is None:
            raise ValueError("WatermarkEmbedder requires a watermark bit matrix")
        wm = check_watermark(self.watermark)
        self.watermark_ = wm
        self.key_ = make_key(
            self.seed,
            wavelet=self.wavelet,
            levels=self.levels,
            q=self.q,
            select_threshold=self.select_threshold,
            wm_width=wm.shape[1],
            wm_height=wm.shape[0],
            perm_seed=self.perm_seed,
        )
        return self

    def transform(self, X):
        if not hasattr(self, "key_"):
            raise NotFittedError("WatermarkEmbedder is not fitted; call fit() first")
        return _per_image(lambda img: embed(img, self.watermark_, self.key_)[0], X)


class WatermarkExtractor(BaseEstimator, TransformerMixin):
    """Blindly recovers the mark bits from marked (possibly attacked) images."""

    def __init__(
        self,
        seed=0,
        wavelet="db4",
        levels=4,
        q=4,
        select_threshold=0.5,
        perm_seed=None,
        wm_width=32,
        wm_height=32,
    ):
        self.seed = seed
        self.wavelet = wavelet
        self.levels = levels
        self.q = q
        self.select_threshold = select_threshold
        self.perm_seed = perm_seed
        self.wm_width = wm_width
        self.wm_height = wm_height

    def fit(self, X=None, y=None):
        self.key_ = make_key(
            self.seed,
            wavelet=self.wavelet,
            levels=self.levels,
            q=self.q,
            select_threshold=self.select_threshold,
            wm_width=self.wm_width,
            wm_height=self.wm_height,
            perm_seed=self.perm_seed,
        )
        return self

    def transform(self, X):
        if not hasattr(self, "key_"):
            raise NotFittedError("WatermarkExtractor is not fitted; call fit() first")
        return _per_image(lambda img: extract(img, self.key_)[0], X)


class AttackTransformer(BaseEstimator, TransformerMixin):
    """Applies one attack-grammar degradation to every image."""

    def __init__(self, spec="mean3"):
        self.spec = spec

    def fit(self, X=None, y=None):
        self.spec_ = parse_attack_spec(self.spec)
        return self

    def transform(self, X):
        if not hasattr(self, "spec_"):
            raise NotFittedError("AttackTransformer is not fitted; call fit() first")
        return _per_image(lambda img: apply_attack(img, self.spec_), X)
