class DatasetError(ValueError):
    """A dataset file or manifest could not be turned into a Dataset."""


class ConfigError(ValueError):
    """Invalid experiment or optimizer configuration."""
