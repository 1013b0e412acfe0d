from services.valuation.value import (
    accumulated,
    customer_value,
    evaluate,
    impact_vector,
    impacts_for_mask,
    overall_value,
    overall_value_for_mask,
    parse_selection,
    sdp_check,
)

__all__ = [
    "accumulated",
    "customer_value",
    "evaluate",
    "impact_vector",
    "impacts_for_mask",
    "overall_value",
    "overall_value_for_mask",
    "parse_selection",
    "sdp_check",
]
