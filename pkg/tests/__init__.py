"""Tests package."""