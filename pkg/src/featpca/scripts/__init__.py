from .init_project import init_project

__all__ = [
    "init_project",
]
