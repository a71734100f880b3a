"""Problem file format.

A problem file is a JSON object ``{"n", "h", "J", "family", "seed", "params"}``
with 0-based coupling indices ``[i, j, value]``, ``i < j``.
"""

import logging
from pathlib import Path

from app.errors import MissingInputError
from app.ising.model import IsingModel

logger = logging.getLogger(__name__)


def dump_model(model: IsingModel) -> str:
    """Serialize a model deterministically."""
    return model.model_dump_json(indent=2) + "\n"


def save_model(model: IsingModel, path: Path) -> Path:
    """Write a model to ``path``, creating parent directories.

    Args:
        model: Model to write.
        path: Destination file.

    Returns:
        The written path.
    """
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(dump_model(model), encoding="utf-8")
    logger.debug(f"wrote problem file: {path}")
    return path


def load_model(path: Path) -> IsingModel:
    """Read a model from ``path``.

    Raises:
        MissingInputError: If the file does not exist.
    """
    if not path.exists():
        raise MissingInputError(f"problem file not found: {path}")
    return IsingModel.model_validate_json(path.read_text(encoding="utf-8"))
