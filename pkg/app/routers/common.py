import logging
from typing import Any, Callable
from fastapi import HTTPException, status
from fastapi.concurrency import run_in_threadpool
from pydantic import ValidationError
from errors import ConvergenceError, DomainError, UsageError

logger = logging.getLogger(__name__)


async def compute(fn: Callable[..., Any], *args: Any, **kwargs: Any) -> Any:
    """Run a numerical job off the event loop and map library errors to HTTP errors."""
    try:
        return await run_in_threadpool(fn, *args, **kwargs)
    except (DomainError, UsageError) as e:
        raise HTTPException(status_code=status.HTTP_422_UNPROCESSABLE_ENTITY, detail=str(e)) from e
    except ValidationError as e:
        raise HTTPException(status_code=status.HTTP_422_UNPROCESSABLE_ENTITY, detail=e.errors()) from e
    except ConvergenceError as e:
        logger.error(f"Computation did not converge: {e}")
        raise HTTPException(status_code=status.HTTP_500_INTERNAL_SERVER_ERROR, detail=str(e)) from e
