"""Tests for GAN-DUF."""
