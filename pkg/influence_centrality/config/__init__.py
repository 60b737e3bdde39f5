"""Configuration module."""

from .settings import Config, EstimatorSettings, ExactSettings, OutputSettings

__all__ = ['Config', 'EstimatorSettings', 'ExactSettings', 'OutputSettings']
