from .reports import CoincidenceResult, CommandResult, Report

__all__ = ["Report", "CoincidenceResult", "CommandResult"]
