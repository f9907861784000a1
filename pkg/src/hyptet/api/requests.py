from typing import List, Literal

from pydantic import BaseModel, Field, field_validator

from hyptet.core.coords import DihedralAngles


class TetrahedronInput(BaseModel):
    """JSON input record: six dihedral angles in A..F order."""

    dihedral_angles: List[float] = Field(..., min_length=6, max_length=6)
    unit: Literal["radians", "degrees"] = "radians"

    @field_validator("dihedral_angles")
    @classmethod
    def _finite(cls, values: List[float]) -> List[float]:
        if any(v != v or v in (float("inf"), float("-inf")) for v in values):
            raise ValueError("dihedral angles must be finite")
        return values

    def to_angles(self) -> DihedralAngles:
        if self.unit == "degrees":
            return DihedralAngles.from_degrees(self.dihedral_angles)
        return DihedralAngles(tuple(self.dihedral_angles))
