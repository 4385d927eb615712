# Implementation tests
