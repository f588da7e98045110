"""Components of Hurwitz spaces: braid orbits, the component monoid,
growth of Hilbert functions and the spectrum of the ring of components."""

from .config import Caps, DEFAULT_CAPS
from .errors import (CapExceeded, HurwitzRingError, InsufficientData, InvalidInput,
                     NotAMember, OmegaUndefined, SettingViolated)
from .group_core import (ClassData, GroupContext, GroupSpec, Permutation, SubgroupRecord,
                         SubgroupRegistry, class_splitting, conjugacy_classes,
                         d_generated_subgroups, enumerate_elements, load_group,
                         symmetric_group_spec)

__version__ = "0.1.0"
