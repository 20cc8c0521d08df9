"""Service layer: pydantic schemas, pure handlers, FastAPI app."""
