from typing import List
from fastapi import APIRouter
from schemas.cycle import CycleConfig, CycleReport, SweepRow
from schemas.run import Command, RunSpec, SweepRequest, TableDocument
from services.cycle import run_cycle, sweep
from services.export import build_document
from routers.common import compute

router = APIRouter(tags=["Cycle"])


@router.post("/cycle", response_model=CycleReport)
async def cycle_report(config: CycleConfig):
    return await compute(run_cycle, config)


@router.post("/sweep", response_model=TableDocument)
async def sweep_table(req: SweepRequest):
    rows: List[SweepRow] = await compute(sweep, req.config, req.spec)
    command = Command.SURFACE if req.spec.squeeze_range is not None else Command.SWEEP
    meta = RunSpec(command=command, medium=req.config.medium, parameters=req.model_dump(mode="json"))
    return build_document(meta, rows)
