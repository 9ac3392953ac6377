from typing import List
from fastapi import APIRouter
from schemas.run import Command, RunSpec, TableDocument
from services.export import build_document
from services.presets import Preset, get_preset, list_presets, run_preset
from routers.common import compute

router = APIRouter(prefix="/presets", tags=["Figure presets"])


@router.get("", response_model=List[Preset])
async def presets():
    return list_presets()


@router.get("/{name}", response_model=TableDocument)
async def preset_table(name: str):
    preset = await compute(get_preset, name)
    rows = await compute(run_preset, name)
    command = Command.SURFACE if preset.spec.squeeze_range is not None else Command.SWEEP
    meta = RunSpec(command=command, medium=preset.config.medium, preset=name,
                   parameters=preset.model_dump(mode="json"))
    return build_document(meta, rows)
