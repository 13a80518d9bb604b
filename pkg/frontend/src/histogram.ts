// Bar-chart rendering straight from a counts map, so the view doubles as a
// debugging lens on the raw measurement data.

export function renderHistogram(
  container: HTMLElement,
  counts: Record<string, number>,
): void {
  container.textContent = "";
  container.classList.add("histogram");
  const keys = Object.keys(counts).sort();
  const max = Math.max(1, ...keys.map((k) => counts[k] ?? 0));
  let maxKey: string | null = null;
  for (const key of keys) {
    if (maxKey === null && counts[key] === max) {
      maxKey = key; // ties resolve to the smallest key, matching the server
    }
  }
  for (const key of keys) {
    const count = counts[key] ?? 0;
    const bar = document.createElement("div");
    bar.className = "hist-bar";
    bar.dataset.key = key;
    bar.dataset.count = String(count);
    if (key === maxKey) {
      bar.classList.add("max");
    }

    const fill = document.createElement("div");
    fill.className = "hist-fill";
    fill.style.height = `${Math.round((count / max) * 100)}%`;
    fill.title = `${key}: ${count}`;

    const value = document.createElement("span");
    value.className = "hist-count";
    value.textContent = String(count);

    const label = document.createElement("span");
    label.className = "hist-label";
    label.textContent = key;

    bar.append(value, fill, label);
    container.append(bar);
  }
}
