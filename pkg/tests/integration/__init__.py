"""Integration tests for the HTTP API and the command line"""
