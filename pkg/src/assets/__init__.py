from .aqg import experiment_assets
