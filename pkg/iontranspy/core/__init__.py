from __future__ import absolute_import

from .data import TargetKind, DatasetKind, Structure, Trajectory, TransportTarget, Sample
from .dataset import Dataset, validate_dataset
from .embedded import EmbeddedSample, EmbeddedDataset
from .io import save_dataset, load_dataset, save_embedded, load_embedded, copy
