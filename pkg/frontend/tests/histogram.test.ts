import { beforeEach, describe, expect, it } from "vitest";

import { renderHistogram } from "../src/histogram.js";

describe("renderHistogram", () => {
  let container: HTMLElement;

  beforeEach(() => {
    container = document.createElement("div");
    document.body.append(container);
  });

  it("renders one bar per counts key, sorted", () => {
    renderHistogram(container, { "10": 23, "11": 28, "01": 24, "00": 25 });
    const bars = [...container.querySelectorAll<HTMLElement>(".hist-bar")];
    expect(bars).toHaveLength(4);
    expect(bars.map((b) => b.dataset.key)).toEqual(["00", "01", "10", "11"]);
  });

  it("marks the maximum bar and scales fills against it", () => {
    renderHistogram(container, { "00": 10, "01": 40, "10": 20, "11": 5 });
    const max = container.querySelector<HTMLElement>(".hist-bar.max");
    expect(max?.dataset.key).toBe("01");
    const fill = max?.querySelector<HTMLElement>(".hist-fill");
    expect(fill?.style.height).toBe("100%");
    const small = container.querySelector<HTMLElement>('[data-key="11"] .hist-fill');
    expect(small?.style.height).toBe("13%"); // round(5/40*100)
  });

  it("breaks ties toward the smallest key, matching the server argmax", () => {
    renderHistogram(container, { "0101": 7, "0010": 7, "1000": 3 });
    const max = container.querySelector<HTMLElement>(".hist-bar.max");
    expect(max?.dataset.key).toBe("0010");
  });

  it("renders zero-count bars so the full space stays visible", () => {
    const counts: Record<string, number> = {};
    for (let k = 0; k < 16; k += 1) {
      counts[k.toString(2).padStart(4, "0")] = k === 11 ? 43 : 0;
    }
    renderHistogram(container, counts);
    expect(container.querySelectorAll(".hist-bar")).toHaveLength(16);
    expect(
      container.querySelector<HTMLElement>(".hist-bar.max")?.dataset.key,
    ).toBe("1011");
  });

  it("clears previous content on re-render", () => {
    renderHistogram(container, { "0": 1, "1": 2 });
    renderHistogram(container, { "0": 3, "1": 4 });
    expect(container.querySelectorAll(".hist-bar")).toHaveLength(2);
    expect(
      container.querySelector<HTMLElement>('[data-key="1"]')?.dataset.count,
    ).toBe("4");
  });
});
