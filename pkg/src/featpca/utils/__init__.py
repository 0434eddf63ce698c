from .create_folder_for_file import create_folder_for_file
from .derive_seed import Stage, derive_seed
from .map_ordered import map_ordered
from .round_sig import round_sig

__all__ = [
    "create_folder_for_file",
    "Stage", "derive_seed",
    "map_ordered",
    "round_sig",
]
