"""Tests for QGR"""
