"""Connected-component labelling of pore masks."""

from typing import List

import numpy as np
from scipy import ndimage

from .models import Pore, PoreMask

#: 8-connectivity: diagonal neighbours belong to the same pore.
EIGHT_CONNECTED = np.ones((3, 3), dtype=bool)


def label_image(mask: PoreMask) -> tuple:
    """Label array and component count under 8-connectivity."""
    labels, count = ndimage.label(mask.bits, structure=EIGHT_CONNECTED)
    return labels, int(count)


def label_pores(mask: PoreMask) -> List[Pore]:
    """
    Pores of ``mask`` with their pixel areas, ordered by label.

    Pores touching the image edge are flagged; a blank mask gives ``[]``.
    """
    labels, count = label_image(mask)
    if count == 0:
        return []
    areas = np.bincount(labels.ravel(), minlength=count + 1)
    edge = np.concatenate((labels[0], labels[-1], labels[:, 0], labels[:, -1]))
    on_border = set(np.unique(edge[edge > 0]).tolist())
    return [
        Pore(pore_id=k, pixel_area=int(areas[k]), touches_border=k in on_border)
        for k in range(1, count + 1)
    ]
