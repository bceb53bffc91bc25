from fastapi import FastAPI
import uvicorn
from src.api.routes import scenario_routes, tables_routes
from src.core.config import load_settings

settings = load_settings()

# Create FastAPI app
app = FastAPI(
    title=settings.service.name,
    description="Semantic information G measure, R(G) solver and purposive range control",
    version=settings.service.version
)

# Register routes
app.include_router(scenario_routes.router, prefix="/api/scenarios", tags=["Scenarios"])
app.include_router(tables_routes.router, prefix="/api/tables", tags=["Tables"])

# Root endpoint
@app.get("/")
async def root():
    return {
        "message": f"Welcome to {settings.service.name}",
        "docs_url": "/docs",
        "redoc_url": "/redoc"
    }

# Run the app if this file is executed directly
if __name__ == "__main__":
    uvicorn.run(
        "src.api.main:app",
        host=settings.service.host,
        port=settings.service.port,
        reload=True
    )
