"""Domain services: circuit algorithms, compiler, optimizers and generators."""
