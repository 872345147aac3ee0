"""Integration tests for Vermont Signal V2"""
