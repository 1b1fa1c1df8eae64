"""Generic positions of polynomial ideals: stability checks, deterministic coordinate transformations, gin."""
