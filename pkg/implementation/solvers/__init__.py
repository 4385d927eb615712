# Reference solvers module
