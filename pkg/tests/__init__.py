"""
Vermont Signal V2 Test Suite
"""
