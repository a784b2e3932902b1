"""
Mapping construction, verification and routing-cost services
"""
