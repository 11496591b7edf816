"""Run the service: EMBED_SERVICE_MODEL / EMBED_SERVICE_PORT control the
model id (or "toy") and listen port."""

import os

import uvicorn

from .app import create_app


def main():
    uvicorn.run(
        create_app(),
        host=os.environ.get("EMBED_SERVICE_HOST", "127.0.0.1"),
        port=int(os.environ.get("EMBED_SERVICE_PORT", "8901")),
    )


if __name__ == "__main__":
    main()
