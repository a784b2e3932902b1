"""
Bonsai Mapping Toolkit Test Suite

"""
