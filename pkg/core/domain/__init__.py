"""This module provides entity definitions, domain services, and business logic for the application."""
