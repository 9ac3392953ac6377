from fastapi import APIRouter
from schemas.run import VerificationReport, VerifyRequest
from services.verify import run_verification
from routers.common import compute

router = APIRouter(tags=["Verification"])


@router.post("/verify", response_model=VerificationReport)
async def verify(req: VerifyRequest):
    return await compute(run_verification, req.tolerance_scale, req.only or None)
