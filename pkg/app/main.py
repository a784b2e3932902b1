"""
Main FastAPI application entry point
"""

from fastapi import FastAPI
from fastapi.middleware.cors import CORSMiddleware
from app.core.config import settings
from app.core.log_config import configure_logging
from app.routers import costs, mappings, topology
import logging

configure_logging()
logger = logging.getLogger(__name__)

# Initialize FastAPI application
app = FastAPI(
    title=settings.APP_TITLE,
    version=settings.APP_VERSION,
    description="Hardware-tailored fermion-to-qubit mappings from ternary trees"
)

# Configure CORS
app.add_middleware(
    CORSMiddleware,
    allow_origins=["*"],
    allow_credentials=True,
    allow_methods=["*"],
    allow_headers=["*"],
)

# Include routers
app.include_router(topology.router)
app.include_router(mappings.router)
app.include_router(costs.router)


@app.get("/")
@app.get("/health")
def health_check():
    """Health check endpoint"""
    return {
        "status": "healthy",
        "message": "Bonsai mapping API is running",
        "version": settings.APP_VERSION,
        "endpoints": {
            "topology_generate": "POST /api/v1/topologies/generate - Generate a device graph",
            "topology_metrics": "POST /api/v1/topologies/metrics - Center, diameter and distances of a graph",
            "classic": "GET /api/v1/mappings/classic/{kind}?n= - Jordan-Wigner, Parity, Bravyi-Kitaev or JKMN mapping",
            "fixtures": "GET /api/v1/mappings/fixtures/{name} - Shipped trees, mappings and graphs",
            "grow": "POST /api/v1/mappings/grow - Grow a hardware-tailored mapping",
            "verify": "POST /api/v1/mappings/verify - Check mapping criteria A-D",
            "report": "POST /api/v1/mappings/report - Weight, delocalisation and SWAP statistics",
            "export": "POST /api/v1/mappings/export - Render as JSON, DOT, operator table or CSV",
            "excitation": "POST /api/v1/costs/excitation - Steiner routing cost of an excitation"
        }
    }


if __name__ == "__main__":
    import uvicorn

    logger.info(f"Starting {settings.APP_TITLE} v{settings.APP_VERSION}")
    uvicorn.run(
        "app.main:app",
        host="0.0.0.0",
        port=8081,
        reload=True,
        log_level=settings.LOG_LEVEL.lower()
    )
