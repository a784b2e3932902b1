"""
Pydantic models for JSON schemas, requests and reports
"""
