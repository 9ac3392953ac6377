from fastapi import APIRouter
from schemas.asymptotics import RegimeReport
from schemas.run import (
    Command,
    LimitsRequest,
    OptimizeReport,
    OptimizeRequest,
    RegimeRequest,
    RunSpec,
    TableDocument,
)
from services.asymptotics import limit_table, optimize_report, regime_report
from services.export import build_document
from routers.common import compute

router = APIRouter(tags=["Asymptotics & optimization"])


@router.post("/limits", response_model=TableDocument)
async def limits(req: LimitsRequest):
    rows = await compute(limit_table, req.config, req.regime, req.values, req.order)
    meta = RunSpec(command=Command.LIMITS, medium=req.config.medium, parameters=req.model_dump(mode="json"))
    return build_document(meta, rows)


@router.post("/regime", response_model=RegimeReport)
async def regime(req: RegimeRequest):
    return await compute(regime_report, req.config, req.regime, req.order)


@router.post("/optimize", response_model=OptimizeReport)
async def optimize(req: OptimizeRequest):
    return await compute(optimize_report, req.config, req.lower, req.upper)
