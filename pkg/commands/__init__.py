from commands import graph, mining, selection, simulation, tables

COMMAND_GROUPS = [graph, selection, simulation, mining, tables]

__all__ = ["COMMAND_GROUPS"]
