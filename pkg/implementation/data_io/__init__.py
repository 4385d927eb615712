# Dataset and report I/O module
