import logging
from typing import Optional
from fastapi import FastAPI, Security, HTTPException, status
from fastapi.security import APIKeyHeader
from config import settings

# Configure logging
logging.basicConfig(level=settings.log_level)

from routers import analysis, cycle, presets, verify

app = FastAPI(title="Squeezed Stirling Engine API", version="1.0.0")

api_key_header = APIKeyHeader(name="x-api-key", auto_error=False)

async def verify_api_key(key: Optional[str] = Security(api_key_header)):
    if settings.api_key is None:
        return None
    if key == settings.api_key.get_secret_value():
        return key
    raise HTTPException(
        status_code=status.HTTP_403_FORBIDDEN,
        detail="Invalid API Key"
    )

app.include_router(cycle.router, dependencies=[Security(verify_api_key)])
app.include_router(presets.router, dependencies=[Security(verify_api_key)])
app.include_router(analysis.router, dependencies=[Security(verify_api_key)])
app.include_router(verify.router, dependencies=[Security(verify_api_key)])

@app.get("/health")
def health():
    return {"status": "ok"}
