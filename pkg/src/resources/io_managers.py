"""Defines custom IOManagers for use with Dagster."""

from pathlib import Path

import polars as pl
from dagster import ConfigurableIOManager, InputContext, MetadataValue, OutputContext
from loguru import logger

from src.utils.config_loaders import get_default


class PolarsCsvIOManager(ConfigurableIOManager):
    """An IOManager that stores polars DataFrames as CSV files under a local directory.

    Each asset is written to ``<output_base_path>/<asset key parts>.csv``; nested key prefixes become
    subdirectories.

    Attributes
    ----------
    output_base_path : str
        Directory that receives the experiment tables.
    """

    output_base_path: str

    def _get_storage_path(self, context: InputContext | OutputContext) -> Path:
        """
        Get the file path for an asset.

        Parameters
        ----------
        context : InputContext or OutputContext
            The Dagster context for the input or output operation.

        Returns
        -------
        Path
            The CSV path derived from the asset key.

        Examples
        --------
        >>> # asset key ["aqg", "phase_diagram"] with output_base_path "out"
        >>> _get_storage_path(context)
        PosixPath('out/aqg/phase_diagram.csv')
        """
        *prefix, name = context.asset_key.parts
        path = Path(self.output_base_path).joinpath(*prefix, f"{name}.csv")
        logger.debug(f"File path for {context.asset_key.parts} is {path}")
        return path

    def handle_output(self, context: OutputContext, obj: pl.DataFrame) -> None:
        """Write the DataFrame and attach row count and a preview as metadata.

        Parameters
        ----------
        context : OutputContext
            The Dagster context for the output operation.
        obj : pl.DataFrame
            The table to persist.
        """
        if not isinstance(obj, pl.DataFrame):
            raise TypeError(f"PolarsCsvIOManager expects a polars DataFrame, got {type(obj).__name__}")
        path = self._get_storage_path(context)
        path.parent.mkdir(parents=True, exist_ok=True)
        obj.write_csv(path, float_precision=get_default("outputs", "float_precision"), float_scientific=True)
        context.add_output_metadata({
            "num_rows": MetadataValue.int(len(obj)),
            "path": MetadataValue.path(str(path)),
            "preview": MetadataValue.text(str(obj.head(10))),
        })
        context.log.info(f"Wrote {len(obj)} rows to {path}")

    def load_input(self, context: InputContext) -> pl.DataFrame:
        """Load the upstream table back from CSV.

        Parameters
        ----------
        context : InputContext
            The Dagster context for the input operation.

        Returns
        -------
        pl.DataFrame
            The stored table.
        """
        path = self._get_storage_path(context)
        if not path.exists():
            raise FileNotFoundError(f"No stored table for {context.asset_key.to_user_string()} at {path}")
        frame = pl.read_csv(path, infer_schema_length=None)
        # columns that were entirely blank come back as strings
        blank = [
            name
            for name, dtype in frame.schema.items()
            if dtype == pl.String and frame[name].null_count() == len(frame)
        ]
        return frame.with_columns(pl.col(blank).cast(pl.Float64)) if blank and len(frame) else frame
