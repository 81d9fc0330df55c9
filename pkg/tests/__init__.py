"""frw_entanglement tests."""
