"""
API routers for topologies, mappings and routing costs
"""
