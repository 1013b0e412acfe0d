from services.mining.causal import frig_from_preferences, map_strength, pearl_strength

__all__ = ["frig_from_preferences", "map_strength", "pearl_strength"]
